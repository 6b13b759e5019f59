#pragma once

// Independent reference implementations used to derive expected values.
// None of them calls into the code they check.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <fstream>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace oracle {

using Rational = boost::multiprecision::cpp_rational;
using Tuple = std::vector<int>;

// [c_1..c_t] as p/q through the convergent matrices [[c, -1], [1, 0]].
// q may be 0 (value infinity); the pair is not reduced.
inline std::pair<std::int64_t, std::int64_t> hj_value(const Tuple& c) {
    std::int64_t p = 1, q = 0; // the empty chain
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        const std::int64_t np = *it * p - q;
        q = p;
        p = np;
    }
    return {p, q};
}

// Euclid-style expansion by floor division on n/a written as ceil steps.
inline Tuple expansion(std::int64_t n, std::int64_t a) {
    Tuple out;
    while (a > 0) {
        std::int64_t b = n / a + (n % a != 0);
        out.push_back(static_cast<int>(b));
        std::tie(n, a) = std::make_pair(a, b * a - n);
    }
    return out;
}

// Every maximal sequence of contractions, tried exhaustively; returns the
// set of terminal chains.
inline void terminal_chains(const Tuple& c, std::set<Tuple>& out) {
    bool any = false;
    if (c.size() > 1) {
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (c[i] != 1) continue;
            any = true;
            Tuple next = c;
            if (i > 0) --next[i - 1];
            if (i + 1 < next.size()) --next[i + 1];
            next.erase(next.begin() + static_cast<std::ptrdiff_t>(i));
            terminal_chains(next, out);
        }
    }
    if (!any) out.insert(c);
}

// Solve A x = b by dense Gaussian elimination over Q.
inline std::vector<Rational> solve(std::vector<std::vector<Rational>> A, std::vector<Rational> b) {
    const std::size_t n = b.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (A[piv][col] == 0) ++piv;
        std::swap(A[piv], A[col]);
        std::swap(b[piv], b[col]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || A[r][col] == 0) continue;
            const Rational f = A[r][col] / A[col][col];
            for (std::size_t k = col; k < n; ++k) A[r][k] -= f * A[col][k];
            b[r] -= f * b[col];
        }
    }
    std::vector<Rational> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / A[i][i];
    return x;
}

// Discrepancies from the dense intersection matrix of a chain.
inline std::vector<Rational> discrepancies(const Tuple& c) {
    const std::size_t n = c.size();
    std::vector<std::vector<Rational>> A(n, std::vector<Rational>(n, 0));
    std::vector<Rational> b(n);
    for (std::size_t i = 0; i < n; ++i) {
        A[i][i] = -c[i];
        if (i + 1 < n) A[i][i + 1] = A[i + 1][i] = 1;
        b[i] = c[i] - 2;
    }
    return solve(A, b);
}

inline std::int64_t isqrt(std::int64_t v) {
    std::int64_t r = 0;
    while ((r + 1) * (r + 1) <= v) ++r;
    return r;
}

// Whether c evaluates to m^2/(ma-1) with 1 <= a < m coprime.
inline std::optional<std::pair<std::int64_t, std::int64_t>> wahl_parameters(const Tuple& c) {
    auto [p, q] = hj_value(c);
    if (q <= 0) return std::nullopt;
    const std::int64_t g = std::gcd(p, q);
    p /= g;
    q /= g;
    const std::int64_t m = isqrt(p);
    if (m < 2 || m * m != p || (q + 1) % m != 0) return std::nullopt;
    const std::int64_t a = (q + 1) / m;
    if (a < 1 || a >= m || std::gcd(m, a) != 1) return std::nullopt;
    return std::make_pair(m, a);
}

// Zero tuples of length e under the bounds, read off triangulations of a
// polygon with vertices 0..e: n_i is the number of triangles at vertex i.
// Sub-polygons i..j are solved once each; counts only grow when pieces are
// glued, so anything already over a bound is dropped.
inline std::set<Tuple> zero_tuples_by_triangulation(const Tuple& bounds) {
    const std::size_t e = bounds.size();
    std::vector<std::vector<std::optional<std::set<Tuple>>>> memo(e + 1, std::vector<std::optional<std::set<Tuple>>>(e + 1));
    auto fits = [&](const Tuple& v, std::size_t first) {
        for (std::size_t t = 0; t < v.size(); ++t) {
            const std::size_t vertex = first + t;
            if (vertex >= 1 && v[t] > bounds[vertex - 1]) return false;
        }
        return true;
    };
    auto solve = [&](auto& self, std::size_t i, std::size_t j) -> const std::set<Tuple>& {
        if (memo[i][j]) return *memo[i][j];
        std::set<Tuple> out;
        if (j == i + 1) {
            out.insert(Tuple{0, 0});
        } else {
            for (std::size_t k = i + 1; k < j; ++k) {
                const std::set<Tuple> left = self(self, i, k);
                const std::set<Tuple>& right = self(self, k, j);
                for (const Tuple& l : left) {
                    for (const Tuple& r : right) {
                        Tuple v(l);
                        v.back() += r.front();
                        v.insert(v.end(), r.begin() + 1, r.end());
                        ++v.front();
                        ++v[k - i];
                        ++v.back();
                        if (fits(v, i)) out.insert(std::move(v));
                    }
                }
            }
        }
        memo[i][j] = std::move(out);
        return *memo[i][j];
    };
    std::set<Tuple> out;
    for (const Tuple& v : solve(solve, 0, e)) out.insert(Tuple(v.begin() + 1, v.end()));
    return out;
}

// All tuples with entries in [lo, hi] of the given length.
template <class F>
void for_each_tuple(std::size_t len, int lo, int hi, F&& f) {
    Tuple t(len, lo);
    for (;;) {
        f(t);
        std::size_t i = 0;
        while (i < len && t[i] == hi) t[i++] = lo;
        if (i == len) return;
        ++t[i];
    }
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline std::vector<std::string> read_lines(const std::string& path) {
    std::ifstream in(path);
    std::vector<std::string> out;
    for (std::string line; std::getline(in, line);) {
        if (!line.empty()) out.push_back(line);
    }
    return out;
}

// Accepts the DOT subset the exporter is meant to produce:
//   graph ID { (node_stmt | edge_stmt)* }  (repeated)
//   node_stmt := ID attr_list? ';'
//   edge_stmt := ID '--' ID attr_list? ';'
//   attr_list := '[' (ID '=' (ID | STRING)) (',' ID '=' (ID | STRING))* ']'
// IDs are alphanumeric/underscore, or signed numerals.
class DotChecker {
public:
    explicit DotChecker(std::string text) : s_(std::move(text)) {}

    bool valid() {
        skip();
        if (pos_ == s_.size()) return false;
        while (pos_ < s_.size()) {
            if (!graph()) return false;
            skip();
        }
        return true;
    }

private:
    bool graph() {
        if (!keyword("graph")) return false;
        if (!id()) return false;
        if (!punct("{")) return false;
        for (;;) {
            skip();
            if (punct("}")) return true;
            if (!stmt()) return false;
        }
    }

    bool stmt() {
        if (!id()) return false;
        if (punct("--")) {
            if (!id()) return false;
        }
        skip();
        if (peek('[') && !attr_list()) return false;
        return punct(";");
    }

    bool attr_list() {
        if (!punct("[")) return false;
        do {
            if (!id() || !punct("=")) return false;
            skip();
            if (peek('"') ? !string() : !id()) return false;
        } while (punct(","));
        return punct("]");
    }

    bool id() {
        skip();
        const std::size_t start = pos_;
        if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+') && pos_ + 1 < s_.size() &&
            std::isdigit(static_cast<unsigned char>(s_[pos_ + 1]))) {
            ++pos_;
        }
        while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
        return pos_ > start;
    }

    bool string() {
        if (!peek('"')) return false;
        ++pos_;
        while (pos_ < s_.size() && s_[pos_] != '"') {
            if (s_[pos_] == '\\') ++pos_;
            ++pos_;
        }
        if (pos_ >= s_.size()) return false;
        ++pos_;
        return true;
    }

    bool keyword(const std::string& kw) {
        skip();
        if (s_.compare(pos_, kw.size(), kw) != 0) return false;
        pos_ += kw.size();
        return pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]));
    }

    bool punct(const std::string& p) {
        skip();
        if (s_.compare(pos_, p.size(), p) != 0) return false;
        pos_ += p.size();
        return true;
    }

    bool peek(char ch) {
        skip();
        return pos_ < s_.size() && s_[pos_] == ch;
    }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    std::string s_;
    std::size_t pos_ = 0;
};

} // namespace oracle
