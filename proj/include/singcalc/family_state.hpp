#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cfrac.hpp"
#include "error.hpp"

namespace singcalc {

enum class CurveRole { Interior, Boundary, Section };

struct CurveRecord {
    int id = 0;
    int selfint = 0;
    CurveRole role = CurveRole::Interior;
    int boundary_index = 0;   // j for D_j, 0 otherwise
    std::optional<int> block; // Wahl block membership

    friend bool operator==(const CurveRecord&, const CurveRecord&) = default;
};

struct DiscoveredCurve {
    int curve_id = 0;
    std::map<int, int> attachments; // j -> multiplicity
};

enum class OpKind { Flip, Contract };

inline const char* to_string(OpKind kind) { return kind == OpKind::Flip ? "flip" : "contract"; }

struct OpRecord {
    OpKind kind = OpKind::Contract;
    int curve = 0;
    std::string before;
    std::string after;
    std::optional<int> attached_to; // contract: the j whose d_j went up
    bool boundary_event = false;    // contract: a whole ledger class vanished
    std::optional<int> removed_class;
};

/// Central fibre of the family, read left to right: the resolution nodes,
/// then D_e, ..., D_1 and the +1 section at the right end.
struct FamilyState {
    std::vector<CurveRecord> curves;
    std::map<int, std::vector<int>> ledger; // j -> ids of the limit components of D_j
    std::vector<DiscoveredCurve> discovered;
    Chain bounds;                           // a_1, ..., a_e
    std::vector<int> d;                     // d[j - 1]
    std::vector<OpRecord> op_log;
    int next_block = 0;

    std::size_t boundary_length() const { return bounds.size(); }

    std::optional<std::size_t> position_of(int id) const {
        for (std::size_t i = 0; i < curves.size(); ++i) {
            if (curves[i].id == id) return i;
        }
        return std::nullopt;
    }

    std::size_t require_position(int id) const {
        auto pos = position_of(id);
        if (!pos) throw Error(Errc::PreViolation, "no curve with id " + std::to_string(id));
        return *pos;
    }

    bool has_blocks() const {
        return std::any_of(curves.begin(), curves.end(), [](const CurveRecord& c) { return c.block.has_value(); });
    }

    /// Block ids in left-to-right order of appearance.
    std::vector<int> block_ids() const {
        std::vector<int> out;
        for (const auto& c : curves) {
            if (c.block && (out.empty() || out.back() != *c.block)) out.push_back(*c.block);
        }
        return out;
    }

    Chain block_chain(int block) const {
        Chain out;
        for (const auto& c : curves) {
            if (c.block == block) out.push_back(-c.selfint);
        }
        return out;
    }

    /// Ledger classes containing the curve.
    std::vector<int> classes_of(int id) const {
        std::vector<int> out;
        for (const auto& [j, members] : ledger) {
            if (std::find(members.begin(), members.end(), id) != members.end()) out.push_back(j);
        }
        return out;
    }

    /// One token per curve; block runs are bracketed and the section is +1.
    std::string snapshot() const {
        std::string out;
        for (std::size_t i = 0; i < curves.size(); ++i) {
            const CurveRecord& c = curves[i];
            const bool opens = c.block && (i == 0 || curves[i - 1].block != c.block);
            const bool closes = c.block && (i + 1 == curves.size() || curves[i + 1].block != c.block);
            if (i) out += ' ';
            if (opens) out += '[';
            out += c.selfint > 0 ? "+" + std::to_string(c.selfint) : std::to_string(c.selfint);
            if (closes) out += ']';
        }
        return out;
    }
};

} // namespace singcalc
