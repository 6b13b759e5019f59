#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cfrac.hpp"
#include "error.hpp"
#include "family_state.hpp"
#include "tsing.hpp"

namespace singcalc {

namespace detail {

inline bool in_block(const FamilyState& state, std::size_t pos) {
    return pos < state.curves.size() && state.curves[pos].block.has_value();
}

/// Blow down the curve at `pos`: its neighbours go up by one and become
/// adjacent, and the curve leaves every ledger class.
inline void blow_down(FamilyState& state, std::size_t pos) {
    const int id = state.curves[pos].id;
    if (pos > 0) ++state.curves[pos - 1].selfint;
    if (pos + 1 < state.curves.size()) ++state.curves[pos + 1].selfint;
    state.curves.erase(state.curves.begin() + static_cast<std::ptrdiff_t>(pos));
    for (auto& [j, members] : state.ledger) std::erase(members, id);
}

} // namespace detail

/// Usual flip of the mk1A neighbourhood formed by the (-1)-curve `c` and the
/// Wahl block [e_1, ..., e_s] whose E_s end it meets. Runs the blow-down
/// cascade: contract c, then every image of E_s, ..., E_2 that becomes a
/// (-1)-curve. E_1 survives as the flipped curve C+.
inline FamilyState usual_flip(FamilyState state, int c) {
    const std::size_t pos = state.require_position(c);
    const CurveRecord curve = state.curves[pos];
    if (curve.block) throw Error(Errc::PreViolation, "flipping curve is a block member");
    if (curve.selfint != -1) throw Error(Errc::PreViolation, "flipping curve has self-intersection " +
                                                                 std::to_string(curve.selfint));
    const bool left_block = pos > 0 && detail::in_block(state, pos - 1);
    const bool right_block = detail::in_block(state, pos + 1);
    if (left_block && right_block) throw Error(Errc::NotMk1A, "curve meets two singular points (mk2A)");
    if (!left_block && !right_block) throw Error(Errc::PreViolation, "curve does not meet a singular point");

    const std::string before = state.snapshot();
    const int block = *state.curves[left_block ? pos - 1 : pos + 1].block;

    // Block ids from E_1 to E_s, E_s being the one next to c.
    std::vector<int> e_ids;
    for (const auto& rec : state.curves) {
        if (rec.block == block) e_ids.push_back(rec.id);
    }
    if (!left_block) std::reverse(e_ids.begin(), e_ids.end());

    // R, the neighbour of c away from the block (if any).
    std::optional<int> r_id;
    if (left_block && pos + 1 < state.curves.size()) r_id = state.curves[pos + 1].id;
    if (!left_block && pos > 0) r_id = state.curves[pos - 1].id;

    detail::blow_down(state, pos);
    for (std::size_t k = e_ids.size(); k-- > 1;) {
        const std::size_t p = state.require_position(e_ids[k]);
        if (state.curves[p].selfint != -1) break;
        detail::blow_down(state, p);
        e_ids.pop_back();
    }

    // e_ids now holds E_1 and the surviving E_2..E_i.
    for (int id : e_ids) state.curves[state.require_position(id)].block.reset();
    if (e_ids.size() > 1) {
        const int fresh = state.next_block++;
        Chain survivors;
        for (std::size_t k = 1; k < e_ids.size(); ++k) {
            CurveRecord& rec = state.curves[state.require_position(e_ids[k])];
            rec.block = fresh;
            survivors.push_back(-rec.selfint);
        }
        if (!is_reduced(survivors) || classify_chain(survivors).kind != TKind::Wahl) {
            throw Error(Errc::UnsupportedConfiguration, "flip left " + to_string(survivors) + ", not a Wahl chain");
        }
    }

    const int c_plus = e_ids.front();
    if (r_id) {
        for (auto& [j, members] : state.ledger) {
            if (std::find(members.begin(), members.end(), *r_id) != members.end()) members.push_back(c_plus);
        }
    }

    OpRecord op;
    op.kind = OpKind::Flip;
    op.curve = c;
    op.before = before;
    op.after = state.snapshot();
    state.op_log.push_back(std::move(op));
    return state;
}

/// Iitaka-Kodaira contraction of a (-1)-curve away from the singular points.
inline FamilyState ik_contract(FamilyState state, int c) {
    const std::size_t pos = state.require_position(c);
    const CurveRecord curve = state.curves[pos];
    if (curve.selfint != -1) {
        throw Error(Errc::PreViolation, "curve has self-intersection " + std::to_string(curve.selfint));
    }
    if (curve.block || (pos > 0 && detail::in_block(state, pos - 1)) || detail::in_block(state, pos + 1)) {
        throw Error(Errc::PreViolation, "curve passes through a singular point");
    }
    if (curve.role == CurveRole::Section) throw Error(Errc::PreViolation, "the section is never contracted");
    if (curve.role == CurveRole::Boundary && curve.boundary_index == 1) {
        throw Error(Errc::PreViolation, "D_1 is never contracted");
    }

    const std::string before = state.snapshot();
    OpRecord op;
    op.kind = OpKind::Contract;
    op.curve = c;

    std::optional<int> sole_class;
    for (const auto& [j, members] : state.ledger) {
        if (members.size() == 1 && members.front() == c) sole_class = j;
    }

    if (sole_class) {
        state.ledger.erase(*sole_class);
        op.boundary_event = true;
        op.removed_class = sole_class;
    } else {
        const int left = pos > 0 ? state.curves[pos - 1].id : -1;
        const int right = pos + 1 < state.curves.size() ? state.curves[pos + 1].id : -1;
        std::map<int, int> attachments;
        for (const auto& [j, members] : state.ledger) {
            int att = 0;
            for (int gamma : members) {
                if (gamma == c) att -= 1;
                else if (gamma == left || gamma == right) att += 1;
            }
            if (att != 0) attachments[j] = att;
        }
        if (!attachments.empty()) {
            if (attachments.size() != 1 || attachments.begin()->second != 1) {
                std::string vec;
                for (const auto& [j, att] : attachments) vec += " D_" + std::to_string(j) + ":" + std::to_string(att);
                throw Error(Errc::AmbiguousAttachment, "attachment vector" + vec);
            }
            const int j = attachments.begin()->first;
            ++state.d[static_cast<std::size_t>(j - 1)];
            state.discovered.push_back({c, attachments});
            op.attached_to = j;
        }
    }

    detail::blow_down(state, pos);
    op.before = before;
    op.after = state.snapshot();
    state.op_log.push_back(std::move(op));
    return state;
}

struct MmpTrace {
    FamilyState final_state;
    int flips = 0;
    int contractions = 0;
    std::vector<int> d_vector; // d_1, ..., d_e
};

inline std::size_t default_step_budget(const FamilyState& state) {
    return 10 * state.curves.size() * state.curves.size();
}

namespace detail {

inline bool contractible(const FamilyState& state, std::size_t pos) {
    const CurveRecord& c = state.curves[pos];
    if (c.selfint != -1 || c.block || c.role == CurveRole::Section) return false;
    return !(c.role == CurveRole::Boundary && c.boundary_index == 1);
}

} // namespace detail

/// While a Wahl block remains, work on the one nearest the boundary: the
/// nearest (-1)-curve on its boundary side is flipped if it touches the
/// block and contracted otherwise. Then contract (-1)-curves, nearest the
/// boundary first, until none is left.
inline MmpTrace run_controlled_mmp(FamilyState state, std::optional<std::size_t> budget = std::nullopt) {
    const std::size_t limit = budget.value_or(default_step_budget(state));
    MmpTrace trace;
    std::size_t steps = 0;
    auto tick = [&] {
        if (++steps > limit) {
            throw Error(Errc::StepBudgetExceeded, "more than " + std::to_string(limit) + " MMP steps");
        }
    };

    while (state.has_blocks()) {
        tick();
        std::size_t block_end = 0;
        for (std::size_t i = 0; i < state.curves.size(); ++i) {
            if (state.curves[i].block) block_end = i;
        }
        std::optional<std::size_t> target;
        for (std::size_t i = block_end + 1; i < state.curves.size(); ++i) {
            if (detail::contractible(state, i)) {
                target = i;
                break;
            }
        }
        if (!target) {
            throw Error(Errc::UnsupportedConfiguration, "no (-1)-curve next to block in " + state.snapshot());
        }
        const int id = state.curves[*target].id;
        if (*target == block_end + 1) {
            state = usual_flip(std::move(state), id);
            ++trace.flips;
        } else {
            state = ik_contract(std::move(state), id);
            ++trace.contractions;
        }
    }

    for (;;) {
        std::optional<std::size_t> target;
        for (std::size_t i = state.curves.size(); i-- > 0;) {
            if (detail::contractible(state, i)) {
                target = i;
                break;
            }
        }
        if (!target) break;
        tick();
        state = ik_contract(std::move(state), state.curves[*target].id);
        ++trace.contractions;
    }

    trace.d_vector = state.d;
    Chain n_tuple;
    for (std::size_t j = 0; j < state.bounds.size(); ++j) {
        const int n_j = state.bounds[j] - state.d[j];
        if (n_j < 1) {
            throw Error(Errc::NotInK, "d_" + std::to_string(j + 1) + " = " + std::to_string(state.d[j]) +
                                          " exceeds a_" + std::to_string(j + 1) + " - 1");
        }
        n_tuple.push_back(n_j);
    }
    if (n_tuple.size() >= 2 && !is_zero_chain(n_tuple).zero) {
        throw Error(Errc::NotInK, to_string(n_tuple) + " is not a zero chain");
    }
    trace.final_state = std::move(state);
    return trace;
}

} // namespace singcalc
