#pragma once

// Hirzebruch–Jung continued fractions and the blow-up calculus on chains.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "error.hpp"
#include "rational.hpp"

namespace singcalc {

/// Linear chain of rational curves, stored as negated self-intersections
/// [c_1, ..., c_t]. Reduced when every entry is at least 2.
using Chain = std::vector<int>;

inline bool is_reduced(const Chain& chain) {
    return std::all_of(chain.begin(), chain.end(), [](int c) { return c >= 2; });
}

inline std::string to_string(const Chain& chain) {
    std::string out = "[";
    for (std::size_t i = 0; i < chain.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(chain[i]);
    }
    return out + "]";
}

/// [c_1, ..., c_t] = c_1 - 1/[c_2, ..., c_t], evaluated right to left on
/// the projective line. The empty chain is ∞.
inline ProjectiveRational eval_chain(const Chain& chain) {
    ProjectiveRational value = ProjectiveRational::infinity();
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
        value = ProjectiveRational::hj_step(*it, value);
    }
    return value;
}

/// Reduced expansion of n/a for n > a >= 1 coprime.
inline Chain expand_fraction(std::int64_t n, std::int64_t a) {
    if (a < 1 || n <= a || std::gcd(n, a) != 1) {
        throw Error(Errc::InvalidFraction,
                    "expected n > a >= 1 coprime, got " + std::to_string(n) + "/" + std::to_string(a));
    }
    Chain out;
    while (a != 0) {
        const std::int64_t b = (n + a - 1) / a;
        out.push_back(static_cast<int>(b));
        const std::int64_t next = b * a - n;
        n = a;
        a = next;
    }
    return out;
}

/// Expansion of a value given as a projective rational; it must be a finite
/// fraction n/a with n > a >= 1.
inline Chain expand_fraction(const ProjectiveRational& value) {
    if (value.is_infinite()) throw Error(Errc::InvalidFraction, "cannot expand infinity");
    return expand_fraction(value.num().convert_to<std::int64_t>(), value.den().convert_to<std::int64_t>());
}

/// Riemenschneider dual via the point diagram: row i carries c_i - 1 dots,
/// starting under the last dot of row i - 1; the dual entries are the
/// column counts plus one.
inline Chain dual_chain(const Chain& chain) {
    if (chain.empty()) throw Error(Errc::NotReduced, "dual of the empty chain");
    if (!is_reduced(chain)) throw Error(Errc::NotReduced, "dual needs entries >= 2, got " + to_string(chain));
    std::vector<int> column_count;
    std::size_t column = 0;
    for (std::size_t row = 0; row < chain.size(); ++row) {
        const int dots = chain[row] - 1;
        for (int k = 0; k < dots; ++k) {
            if (k > 0) ++column;
            if (column >= column_count.size()) column_count.resize(column + 1, 0);
            ++column_count[column];
        }
    }
    Chain dual(column_count.size());
    std::transform(column_count.begin(), column_count.end(), dual.begin(), [](int c) { return c + 1; });
    return dual;
}

/// Blow up at gap `gap` of the chain: gap 0 is the left end, gap t the right
/// end, and 0 < gap < t the junction between entries gap - 1 and gap.
inline Chain blow_up_at(const Chain& chain, std::size_t gap) {
    if (chain.empty() || gap > chain.size()) {
        throw Error(Errc::PositionOutOfRange,
                    "gap " + std::to_string(gap) + " in chain of length " + std::to_string(chain.size()));
    }
    Chain out;
    out.reserve(chain.size() + 1);
    out.insert(out.end(), chain.begin(), chain.begin() + static_cast<std::ptrdiff_t>(gap));
    out.push_back(1);
    out.insert(out.end(), chain.begin() + static_cast<std::ptrdiff_t>(gap), chain.end());
    if (gap > 0) ++out[gap - 1];
    if (gap < chain.size()) ++out[gap + 1];
    return out;
}

/// Blow down the entry `index`, which must be 1; its neighbours drop by one.
inline Chain contract_at(const Chain& chain, std::size_t index) {
    if (index >= chain.size()) {
        throw Error(Errc::PositionOutOfRange,
                    "index " + std::to_string(index) + " in chain of length " + std::to_string(chain.size()));
    }
    if (chain[index] != 1) {
        throw Error(Errc::EntryNotOne, "entry " + std::to_string(index) + " of " + to_string(chain) + " is not 1");
    }
    Chain out = chain;
    if (index > 0) --out[index - 1];
    if (index + 1 < out.size()) --out[index + 1];
    out.erase(out.begin() + static_cast<std::ptrdiff_t>(index));
    return out;
}

struct ZeroWitness {
    bool zero = false;
    /// Indices contracted, each relative to the chain at that step.
    std::vector<std::size_t> contractions;
};

/// Whether the chain blows down to [0]; the leftmost 1 is always contracted
/// first and the sequence is returned as the witness.
inline ZeroWitness is_zero_chain(const Chain& chain) {
    ZeroWitness witness;
    Chain current = chain;
    while (current.size() > 1) {
        auto it = std::find(current.begin(), current.end(), 1);
        if (it == current.end()) break;
        const auto index = static_cast<std::size_t>(it - current.begin());
        witness.contractions.push_back(index);
        current = contract_at(current, index);
    }
    witness.zero = current.size() == 1 && current.front() == 0;
    return witness;
}

} // namespace singcalc
