#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "cfrac.hpp"
#include "error.hpp"
#include "rational.hpp"
#include "tsing.hpp"

namespace singcalc {

/// An element (n_1, ..., n_e) of K_e(n/(n-a)), together with the bounds
/// [a_1, ..., a_e] = expansion of n/(n-a) and d_i = a_i - n_i. Index 1 is
/// the boundary curve nearest the +1 section.
struct FillingDescriptor {
    Chain n_tuple;
    Chain bounds;
    SingularityType singularity;
    std::vector<int> d;

    friend bool operator==(const FillingDescriptor& x, const FillingDescriptor& y) {
        return x.n_tuple == y.n_tuple && x.bounds == y.bounds && x.singularity == y.singularity;
    }
    friend bool operator<(const FillingDescriptor& x, const FillingDescriptor& y) {
        return std::tie(x.singularity.n, x.singularity.a, x.n_tuple) < std::tie(y.singularity.n, y.singularity.a, y.n_tuple);
    }
};

inline std::string filling_name(const FillingDescriptor& desc) {
    std::string out = "W_{" + std::to_string(desc.singularity.n) + "," + std::to_string(desc.singularity.a) + "}(";
    for (std::size_t i = 0; i < desc.n_tuple.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(desc.n_tuple[i]);
    }
    return out + ")";
}

/// Zero chains of length e below `bounds`, grown from [0] by blow-ups.
///
/// A blow-up only increases entries and shifts existing ones right by at
/// most one, so an entry at position i of a partial chain of length L ends
/// up somewhere in [i, i + e - L]. If it already exceeds every bound in that
/// window the whole subtree is dead.
inline std::set<Chain> enumerate_zero_chains(std::size_t e, const Chain& bounds) {
    if (e < 2) throw Error(Errc::DegenerateLength, "zero chains need length >= 2");
    if (bounds.size() != e) throw Error(Errc::InvalidInput, "bounds length differs from e");

    auto viable = [&](const Chain& partial) {
        const std::size_t slack = e - partial.size();
        for (std::size_t i = 0; i < partial.size(); ++i) {
            const auto first = bounds.begin() + static_cast<std::ptrdiff_t>(i);
            const int cap = *std::max_element(first, first + static_cast<std::ptrdiff_t>(slack + 1));
            if (partial[i] > cap) return false;
        }
        return true;
    };

    std::set<Chain> level{{0}};
    for (std::size_t len = 2; len <= e; ++len) {
        std::set<Chain> next;
        for (const Chain& c : level) {
            for (std::size_t gap = 0; gap <= c.size(); ++gap) {
                Chain grown = blow_up_at(c, gap);
                if (viable(grown)) next.insert(std::move(grown));
            }
        }
        level = std::move(next);
    }
    return level;
}

/// Whether the tridiagonal form with diagonal n_i and off-diagonal -1 is
/// positive semidefinite of rank exactly e - 1. Checked by symmetric
/// elimination over Q: a positive semidefinite matrix has nonnegative
/// pivots, and a zero pivot forces the rest of its row to vanish.
inline bool is_admissible_zero(const Chain& chain) {
    const std::size_t e = chain.size();
    if (e == 0) return false;
    std::vector<ProjectiveRational> diag(e);
    for (std::size_t i = 0; i < e; ++i) diag[i] = chain[i];

    std::size_t rank = 0;
    for (std::size_t k = 0; k < e; ++k) {
        const ProjectiveRational& pivot = diag[k];
        if (pivot < ProjectiveRational(0)) return false;
        if (pivot.is_zero()) {
            if (k + 1 < e) return false; // the off-diagonal -1 survives untouched
            continue;
        }
        ++rank;
        if (k + 1 < e) diag[k + 1] -= ProjectiveRational(1) / pivot;
    }
    return rank + 1 == e;
}

inline std::set<FillingDescriptor> k_set(std::int64_t n, std::int64_t a) {
    const Chain bounds = expand_fraction(n, n - a);
    if (bounds.size() < 2) {
        throw Error(Errc::DegenerateLength, "1/" + std::to_string(n) + "(1," + std::to_string(a) +
                                                ") has a dual chain of length 1; K_1 is not defined here");
    }
    std::set<FillingDescriptor> out;
    for (const Chain& c : enumerate_zero_chains(bounds.size(), bounds)) {
        FillingDescriptor desc;
        desc.n_tuple = c;
        desc.bounds = bounds;
        desc.singularity = {n, a};
        desc.d.resize(c.size());
        for (std::size_t i = 0; i < c.size(); ++i) desc.d[i] = bounds[i] - c[i];
        out.insert(std::move(desc));
    }
    return out;
}

} // namespace singcalc
