#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cfrac.hpp"
#include "error.hpp"
#include "family_state.hpp"
#include "rational.hpp"
#include "tsing.hpp"

namespace singcalc {

struct ResolutionBlock {
    Chain chain;
    TClassification kind;

    friend bool operator==(const ResolutionBlock& x, const ResolutionBlock& y) { return x.chain == y.chain; }
};

struct ResolutionNode {
    int selfint = -1;
    std::optional<std::size_t> block;

    friend bool operator==(const ResolutionNode&, const ResolutionNode&) = default;
};

/// A chain of curves, left to right as in the expansion of n/a, some of
/// whose contiguous runs are contracted to class T points.
struct DecoratedResolution {
    std::vector<ResolutionNode> nodes;
    std::vector<ResolutionBlock> blocks;

    DecoratedResolution& add_kept(int selfint) {
        nodes.push_back({selfint, std::nullopt});
        return *this;
    }

    DecoratedResolution& add_block(const Chain& chain) {
        if (chain.empty()) return *this;
        const std::size_t id = blocks.size();
        TClassification kind;
        if (is_reduced(chain)) kind = classify_chain(chain);
        blocks.push_back({chain, kind});
        for (int c : chain) nodes.push_back({-c, id});
        return *this;
    }

    Chain chain() const {
        Chain out;
        out.reserve(nodes.size());
        for (const auto& node : nodes) out.push_back(-node.selfint);
        return out;
    }

    friend bool operator==(const DecoratedResolution&, const DecoratedResolution&) = default;
};

/// Short human-readable form, e.g. "[4] -1 [5,2]".
inline std::string to_string(const DecoratedResolution& dec) {
    std::string out;
    for (std::size_t i = 0; i < dec.nodes.size();) {
        if (!out.empty()) out += ' ';
        const auto& node = dec.nodes[i];
        if (node.block) {
            out += to_string(dec.blocks.at(*node.block).chain);
            i += dec.blocks.at(*node.block).chain.size();
        } else {
            out += std::to_string(node.selfint);
            ++i;
        }
    }
    return out;
}

/// Throws malformed-decoration unless every block is one contiguous run of
/// nodes matching its chain, blocks are separated by kept curves, and all
/// self-intersections are negative.
inline void check_structure(const DecoratedResolution& dec) {
    auto fail = [](const std::string& why) { throw Error(Errc::MalformedDecoration, why); };
    if (dec.nodes.empty()) fail("no nodes");
    std::vector<int> seen(dec.blocks.size(), 0);
    for (std::size_t i = 0; i < dec.nodes.size();) {
        const auto& node = dec.nodes[i];
        if (node.selfint >= 0) fail("node " + std::to_string(i) + " has nonnegative self-intersection");
        if (!node.block) {
            ++i;
            continue;
        }
        const std::size_t id = *node.block;
        if (id >= dec.blocks.size()) fail("node " + std::to_string(i) + " refers to a missing block");
        if (seen[id]++) fail("block " + std::to_string(id) + " is not contiguous");
        const Chain& chain = dec.blocks[id].chain;
        for (std::size_t k = 0; k < chain.size(); ++k, ++i) {
            if (i >= dec.nodes.size() || dec.nodes[i].block != id || -dec.nodes[i].selfint != chain[k]) {
                fail("block " + std::to_string(id) + " does not match its chain " + to_string(chain));
            }
        }
        if (i < dec.nodes.size() && dec.nodes[i].block) fail("blocks " + std::to_string(id) + " and " +
                                                             std::to_string(*dec.nodes[i].block) + " touch");
    }
    for (std::size_t id = 0; id < seen.size(); ++id) {
        if (!seen[id]) fail("block " + std::to_string(id) + " has no nodes");
    }
}

struct MaximalResolution {
    Chain chain;
    std::vector<ProjectiveRational> alphas;
};

/// Chooses one junction (index of its left curve) among the candidates.
using JunctionPicker = std::function<std::size_t(const std::vector<std::size_t>&)>;

inline MaximalResolution maximal_resolution(std::int64_t n, std::int64_t a, const JunctionPicker& pick = {}) {
    MaximalResolution out;
    out.chain = expand_fraction(n, a);
    for (const auto& d : discrepancies(out.chain)) out.alphas.push_back(d + ProjectiveRational(1));

    for (;;) {
        std::vector<std::size_t> candidates;
        for (std::size_t i = 0; i + 1 < out.chain.size(); ++i) {
            if (out.alphas[i] + out.alphas[i + 1] < ProjectiveRational(1)) candidates.push_back(i);
        }
        if (candidates.empty()) break;
        const std::size_t i = pick ? pick(candidates) : candidates.front();
        const ProjectiveRational alpha = out.alphas[i] + out.alphas[i + 1];
        out.chain = blow_up_at(out.chain, i + 1);
        out.alphas.insert(out.alphas.begin() + static_cast<std::ptrdiff_t>(i + 1), alpha);
    }
    return out;
}

/// Contract 1-entries (leftmost first) until none is left.
inline Chain blow_down_normal_form(Chain chain) {
    for (;;) {
        auto it = std::find(chain.begin(), chain.end(), 1);
        if (it == chain.end()) return chain;
        chain = contract_at(chain, static_cast<std::size_t>(it - chain.begin()));
    }
}

/// Every chain reachable from the maximal resolution by blowing down
/// (-1)-curves: the partial resolutions it dominates.
inline std::set<Chain> dominated_chains(std::int64_t n, std::int64_t a) {
    std::set<Chain> seen;
    std::vector<Chain> stack{maximal_resolution(n, a).chain};
    seen.insert(stack.back());
    while (!stack.empty()) {
        const Chain current = std::move(stack.back());
        stack.pop_back();
        for (std::size_t i = 0; i < current.size(); ++i) {
            if (current[i] != 1) continue;
            Chain next = contract_at(current, i);
            if (seen.insert(next).second) stack.push_back(std::move(next));
        }
    }
    return seen;
}

enum class ResolutionMode { P, M };

struct ValidationReport {
    bool blocks_class_t = true;
    bool canonical_degrees = true;
    bool dominated = true;
    std::vector<std::string> messages;

    bool ok() const { return blocks_class_t && canonical_degrees && dominated; }
};

namespace detail {

inline ValidationReport validate_against(const DecoratedResolution& dec, const Chain& minimal,
                                         const std::set<Chain>& dominated, ResolutionMode mode) {
    check_structure(dec);
    ValidationReport report;

    std::vector<std::optional<std::vector<ProjectiveRational>>> block_discrepancies(dec.blocks.size());
    for (std::size_t id = 0; id < dec.blocks.size(); ++id) {
        const Chain& chain = dec.blocks[id].chain;
        const TKind kind = is_reduced(chain) ? classify_chain(chain).kind : TKind::NotT;
        const bool allowed = mode == ResolutionMode::P ? kind != TKind::NotT : kind == TKind::Wahl;
        if (!allowed) {
            report.blocks_class_t = false;
            report.messages.push_back("block " + to_string(chain) + " is " + to_string(kind));
        }
        if (is_reduced(chain)) block_discrepancies[id] = discrepancies(chain);
    }

    for (std::size_t i = 0; i < dec.nodes.size(); ++i) {
        if (dec.nodes[i].block) continue;
        std::vector<ProjectiveRational> touching;
        bool known = true;
        auto touch = [&](std::size_t j, bool left_of_curve) {
            const auto& id = dec.nodes[j].block;
            if (!id) return;
            if (!block_discrepancies[*id]) {
                known = false;
                return;
            }
            const auto& ds = *block_discrepancies[*id];
            touching.push_back(left_of_curve ? ds.back() : ds.front());
        };
        if (i > 0) touch(i - 1, true);
        if (i + 1 < dec.nodes.size()) touch(i + 1, false);
        if (!known) {
            report.canonical_degrees = false;
            report.messages.push_back("node " + std::to_string(i) + " touches a block without discrepancies");
            continue;
        }
        const ProjectiveRational degree = relative_canonical_degree(dec.nodes[i].selfint, touching);
        const bool good = mode == ResolutionMode::P ? degree > ProjectiveRational(0) : degree >= ProjectiveRational(0);
        if (!good) {
            report.canonical_degrees = false;
            report.messages.push_back("node " + std::to_string(i) + " (" + std::to_string(dec.nodes[i].selfint) +
                                      ") has K.C = " + degree.to_string());
        }
    }

    const Chain chain = dec.chain();
    if (blow_down_normal_form(chain) != minimal) {
        report.dominated = false;
        report.messages.push_back(to_string(chain) + " does not blow down to " + to_string(minimal));
    } else if (mode == ResolutionMode::P && !dominated.count(chain)) {
        report.dominated = false;
        report.messages.push_back(to_string(chain) + " is not dominated by the maximal resolution");
    }
    return report;
}

} // namespace detail

inline ValidationReport validate_p_resolution(const DecoratedResolution& dec, std::int64_t n, std::int64_t a,
                                              ResolutionMode mode = ResolutionMode::P) {
    return detail::validate_against(dec, expand_fraction(n, a), dominated_chains(n, a), mode);
}

/// All P-resolutions of 1/n(1,a) by exhaustive search over dominated chains
/// and their decorations.
inline std::vector<DecoratedResolution> enumerate_p_resolutions_bruteforce(std::int64_t n, std::int64_t a,
                                                                           std::int64_t bound = 60) {
    if (n > bound) {
        throw Error(Errc::BoundExceeded, "n = " + std::to_string(n) + " exceeds the brute-force bound " +
                                             std::to_string(bound));
    }
    const Chain minimal = expand_fraction(n, a);
    const std::set<Chain> dominated = dominated_chains(n, a);

    std::vector<DecoratedResolution> out;
    for (const Chain& chain : dominated) {
        if (blow_down_normal_form(chain) != minimal) continue;
        DecoratedResolution partial;

        // Once both neighbours of a kept curve are placed its K-degree is
        // final, and a P-resolution needs it positive. Pruning here keeps
        // long runs of (-2)-curves from blowing up the search.
        auto kept_curve_ok = [&](std::size_t i) {
            std::vector<ProjectiveRational> touching;
            if (i > 0 && partial.nodes[i - 1].block) {
                touching.push_back(discrepancies(partial.blocks[*partial.nodes[i - 1].block].chain).back());
            }
            if (i + 1 < partial.nodes.size() && partial.nodes[i + 1].block) {
                touching.push_back(discrepancies(partial.blocks[*partial.nodes[i + 1].block].chain).front());
            }
            return relative_canonical_degree(partial.nodes[i].selfint, touching) > ProjectiveRational(0);
        };

        // Segments left to right; a block may not follow a block.
        std::function<void(std::size_t, bool)> extend = [&](std::size_t pos, bool after_block) {
            if (pos > 0) {
                const auto& last = partial.nodes[pos - 1];
                const std::size_t start = last.block ? pos - partial.blocks[*last.block].chain.size() : pos - 1;
                if (start > 0 && !partial.nodes[start - 1].block && !kept_curve_ok(start - 1)) return;
            }
            if (pos == chain.size()) {
                if (detail::validate_against(partial, minimal, dominated, ResolutionMode::P).ok()) {
                    out.push_back(partial);
                }
                return;
            }
            partial.add_kept(-chain[pos]);
            extend(pos + 1, false);
            partial.nodes.pop_back();
            if (after_block) return;
            for (std::size_t end = pos + 1; end <= chain.size(); ++end) {
                if (chain[end - 1] < 2) break;
                const Chain piece(chain.begin() + static_cast<std::ptrdiff_t>(pos),
                                  chain.begin() + static_cast<std::ptrdiff_t>(end));
                if (!classify_chain(piece).is_t()) continue;
                partial.add_block(piece);
                extend(end, true);
                partial.nodes.resize(pos);
                partial.blocks.pop_back();
            }
        };
        extend(0, false);
    }
    return out;
}

namespace detail {

inline std::pair<std::int64_t, std::int64_t> singularity_of(const DecoratedResolution& dec) {
    const ProjectiveRational value = eval_chain(dec.chain());
    if (value.is_infinite() || value.den() < 1 || value.num() <= value.den()) {
        throw Error(Errc::InvalidInput, to_string(dec) + " is not a resolution of a cyclic quotient singularity");
    }
    return {value.num().convert_to<std::int64_t>(), value.den().convert_to<std::int64_t>()};
}

} // namespace detail

/// Splits every ClassT(d >= 2) block into d Wahl chains joined by (-1)-curves
/// and dissolves Du Val blocks into kept (-2)-curves.
inline DecoratedResolution crepant_m_resolution(const DecoratedResolution& dec) {
    check_structure(dec);
    const auto [n, a] = detail::singularity_of(dec);
    const Chain minimal = expand_fraction(n, a);
    const std::set<Chain> dominated = dominated_chains(n, a);
    if (!detail::validate_against(dec, minimal, dominated, ResolutionMode::P).ok() &&
        !detail::validate_against(dec, minimal, dominated, ResolutionMode::M).ok()) {
        throw Error(Errc::InvalidInput, to_string(dec) + " is neither a P- nor an M-resolution");
    }

    DecoratedResolution out;
    for (std::size_t i = 0; i < dec.nodes.size();) {
        const auto& node = dec.nodes[i];
        if (!node.block) {
            out.add_kept(node.selfint);
            ++i;
            continue;
        }
        const ResolutionBlock& block = dec.blocks[*node.block];
        i += block.chain.size();
        switch (block.kind.kind) {
        case TKind::DuValA:
            for (int c : block.chain) out.add_kept(-c);
            break;
        case TKind::Wahl:
            out.add_block(block.chain);
            break;
        case TKind::ClassT: {
            const Chain wahl = expand_fraction(block.kind.m * block.kind.m, block.kind.m * block.kind.a - 1);
            Chain joined;
            for (std::int64_t k = 0; k < block.kind.d; ++k) {
                if (k) {
                    out.add_kept(-1);
                    joined.push_back(1);
                }
                out.add_block(wahl);
                joined.insert(joined.end(), wahl.begin(), wahl.end());
            }
            if (eval_chain(joined) != eval_chain(block.chain)) {
                throw Error(Errc::UnsupportedConfiguration,
                            "split of " + to_string(block.chain) + " does not blow down to it");
            }
            break;
        }
        case TKind::NotT:
            throw Error(Errc::InvalidInput, "block " + to_string(block.chain) + " is not of class T");
        }
    }
    return out;
}

/// Initial MMP state: the resolution nodes, an interior (-1)-curve, the
/// boundary D_e, ..., D_2, D_1 and the +1 section.
inline FamilyState compactify(const DecoratedResolution& dec, std::int64_t n, std::int64_t a) {
    check_structure(dec);
    if (!validate_p_resolution(dec, n, a, ResolutionMode::M).ok()) {
        throw Error(Errc::InvalidInput, to_string(dec) + " is not an M-resolution of 1/" + std::to_string(n) +
                                            "(1," + std::to_string(a) + ")");
    }
    FamilyState state;
    state.bounds = expand_fraction(n, n - a);
    const std::size_t e = state.bounds.size();
    state.d.assign(e, 0);

    int id = 0;
    for (const auto& node : dec.nodes) {
        CurveRecord curve{id++, node.selfint, CurveRole::Interior, 0, std::nullopt};
        if (node.block) curve.block = static_cast<int>(*node.block);
        state.curves.push_back(curve);
    }
    state.next_block = static_cast<int>(dec.blocks.size());
    state.curves.push_back({id++, -1, CurveRole::Interior, 0, std::nullopt});
    for (std::size_t j = e; j >= 1; --j) {
        const int selfint = j == 1 ? -(state.bounds[0] - 1) : -state.bounds[j - 1];
        state.curves.push_back({id, selfint, CurveRole::Boundary, static_cast<int>(j), std::nullopt});
        state.ledger[static_cast<int>(j)] = {id};
        ++id;
    }
    state.curves.push_back({id, 1, CurveRole::Section, 0, std::nullopt});
    return state;
}

} // namespace singcalc
