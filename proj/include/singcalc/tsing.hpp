#pragma once

// Class T and Wahl chains: recognition, generation, and the numerical data
// (discrepancies, ν-multiplicities, initial curves) used by the flip engine.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cfrac.hpp"
#include "error.hpp"
#include "rational.hpp"

namespace singcalc {

/// Cyclic quotient singularity 1/n(1,a); n = 1 is a smooth point.
struct SingularityType {
    std::int64_t n = 1;
    std::int64_t a = 0;

    friend bool operator==(const SingularityType&, const SingularityType&) = default;
};

enum class TKind { NotT, DuValA, ClassT, Wahl };

inline const char* to_string(TKind kind) {
    switch (kind) {
    case TKind::NotT: return "NotT";
    case TKind::DuValA: return "DuValA";
    case TKind::ClassT: return "ClassT";
    case TKind::Wahl: return "Wahl";
    }
    return "?";
}

/// One step of the T-extension: Prepend is [2, b_1, ..., b_r + 1], Append is
/// [b_1 + 1, ..., b_r, 2].
enum class TMove { Prepend, Append };

struct TClassification {
    TKind kind = TKind::NotT;
    int k = 0;                // DuValA length
    std::int64_t d = 0;       // ClassT / Wahl: chain evaluates to d m^2 / (d m a - 1)
    std::int64_t m = 0;
    std::int64_t a = 0;
    Chain base_chain;         // [4] or [3,2,...,2,3]
    std::vector<TMove> moves; // applied to base_chain, in order, to rebuild the chain

    bool is_t() const { return kind != TKind::NotT; }
    bool is_singular_t() const { return kind == TKind::ClassT || kind == TKind::Wahl; }

    friend bool operator==(const TClassification&, const TClassification&) = default;
};

inline Chain apply_move(const Chain& chain, TMove move) {
    Chain out;
    out.reserve(chain.size() + 1);
    if (move == TMove::Prepend) {
        out.push_back(2);
        out.insert(out.end(), chain.begin(), chain.end());
        ++out.back();
    } else {
        out = chain;
        ++out.front();
        out.push_back(2);
    }
    return out;
}

namespace detail {

inline bool is_t_base(const Chain& chain) {
    if (chain == Chain{4}) return true;
    if (chain.size() < 2 || chain.front() != 3 || chain.back() != 3) return false;
    return std::all_of(chain.begin() + 1, chain.end() - 1, [](int c) { return c == 2; });
}

inline std::int64_t isqrt_exact(std::int64_t v) {
    auto r = static_cast<std::int64_t>(std::sqrt(static_cast<long double>(v)));
    while (r * r > v) --r;
    while ((r + 1) * (r + 1) <= v) ++r;
    return r * r == v ? r : -1;
}

} // namespace detail

/// Undo the T-extension moves down to a base case (or all 2s).
inline TClassification classify_chain(const Chain& chain) {
    if (chain.empty() || !is_reduced(chain)) {
        throw Error(Errc::NotReduced, "classify_chain needs a nonempty reduced chain, got " + to_string(chain));
    }
    TClassification out;
    if (std::all_of(chain.begin(), chain.end(), [](int c) { return c == 2; })) {
        out.kind = TKind::DuValA;
        out.k = static_cast<int>(chain.size());
        return out;
    }
    Chain current = chain;
    std::vector<TMove> undone;
    while (!detail::is_t_base(current)) {
        if (current.size() < 2) return out;
        if (current.front() == 2 && current.back() >= 3) {
            current.erase(current.begin());
            --current.back();
            undone.push_back(TMove::Prepend);
        } else if (current.back() == 2 && current.front() >= 3) {
            current.pop_back();
            --current.front();
            undone.push_back(TMove::Append);
        } else {
            return out;
        }
    }
    out.base_chain = current;
    out.moves.assign(undone.rbegin(), undone.rend());
    out.d = current.size() == 1 ? 1 : static_cast<std::int64_t>(current.size());

    const ProjectiveRational value = eval_chain(chain);
    const std::int64_t num = value.num().convert_to<std::int64_t>();
    const std::int64_t den = value.den().convert_to<std::int64_t>();
    out.m = detail::isqrt_exact(num / out.d);
    out.a = (den + 1) / (out.d * out.m);
    out.kind = out.d == 1 ? TKind::Wahl : TKind::ClassT;
    return out;
}

/// All Wahl chains of length <= max_len: the closure of [4] under both
/// extension moves. Sorted by length, then lexicographically.
inline std::vector<Chain> generate_wahl_chains(std::size_t max_len) {
    if (max_len < 1) throw Error(Errc::InvalidInput, "max_len must be >= 1");
    std::vector<Chain> out{{4}};
    std::vector<Chain> frontier{{4}};
    for (std::size_t len = 2; len <= max_len; ++len) {
        std::set<Chain> next;
        for (const Chain& c : frontier) {
            next.insert(apply_move(c, TMove::Prepend));
            next.insert(apply_move(c, TMove::Append));
        }
        frontier.assign(next.begin(), next.end());
        out.insert(out.end(), frontier.begin(), frontier.end());
    }
    return out;
}

/// Exact solution of sum_j d_j (E_j . E_i) = K . E_i = c_i - 2 over a chain;
/// the discrepancies d_j = -1 + alpha_j lie in (-1, 0] for reduced chains.
inline std::vector<ProjectiveRational> discrepancies(const Chain& chain) {
    if (chain.empty() || !is_reduced(chain)) {
        throw Error(Errc::NotReduced, "discrepancies need a nonempty reduced chain, got " + to_string(chain));
    }
    // Tridiagonal system with diagonal -c_i and off-diagonals 1 (Thomas algorithm).
    const std::size_t t = chain.size();
    std::vector<ProjectiveRational> diag(t), rhs(t);
    for (std::size_t i = 0; i < t; ++i) {
        diag[i] = -chain[i];
        rhs[i] = chain[i] - 2;
    }
    for (std::size_t i = 1; i < t; ++i) {
        const ProjectiveRational factor = ProjectiveRational(1) / diag[i - 1];
        diag[i] -= factor;
        rhs[i] -= factor * rhs[i - 1];
    }
    std::vector<ProjectiveRational> d(t);
    d[t - 1] = rhs[t - 1] / diag[t - 1];
    for (std::size_t i = t - 1; i-- > 0;) {
        d[i] = (rhs[i] - d[i + 1]) / diag[i];
    }
    return d;
}

/// K . C on the partially contracted surface for a kept curve C of
/// self-intersection `curve_selfint` meeting singular blocks whose touching
/// end curves have the given discrepancies.
inline ProjectiveRational relative_canonical_degree(int curve_selfint,
                                                    const std::vector<ProjectiveRational>& touching) {
    ProjectiveRational out(-2 - curve_selfint);
    for (const auto& d : touching) out -= d;
    return out;
}

struct WahlData {
    Chain chain;
    std::int64_t m = 0;
    std::int64_t a = 0;
    std::size_t initial_index = 0;          // 1-based: the initial curve is E_{initial_index}
    std::vector<std::int64_t> nu;           // nu_1 .. nu_{s+1}
    std::vector<ProjectiveRational> discrepancies;
};

/// Replays the extension moves on the nodal-curve model: starting from
/// [4] with multiplicities (1; 2), Prepend maps (nu_1..nu_s; w) to
/// (w, nu_1..nu_s; w + nu_s) and Append to (nu_1..nu_s, w; w + nu_1).
inline WahlData wahl_data(const Chain& chain) {
    const TClassification cls = classify_chain(chain);
    if (cls.kind != TKind::Wahl) throw Error(Errc::NotWahl, to_string(chain) + " is not a Wahl chain");

    std::vector<std::int64_t> nu{1};
    std::int64_t last = 2;
    for (TMove move : cls.moves) {
        if (move == TMove::Prepend) {
            const std::int64_t next = last + nu.back();
            nu.insert(nu.begin(), last);
            last = next;
        } else {
            const std::int64_t next = last + nu.front();
            nu.push_back(last);
            last = next;
        }
    }
    WahlData out;
    out.chain = chain;
    out.m = last;
    out.a = last - nu.back();
    out.initial_index = static_cast<std::size_t>(std::find(nu.begin(), nu.end(), 1) - nu.begin()) + 1;
    for (std::int64_t v : nu) out.discrepancies.emplace_back(BigInt(v - last), BigInt(last));
    nu.push_back(last);
    out.nu = std::move(nu);
    return out;
}

} // namespace singcalc
