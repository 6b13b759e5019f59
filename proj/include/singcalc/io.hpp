#pragma once

// JSON and DOT renderings. Everything else in the library is independent of
// nlohmann/json; only this header pulls it in.

#include <cstddef>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "error.hpp"
#include "family_state.hpp"
#include "identify.hpp"
#include "kset.hpp"
#include "mmp.hpp"
#include "rational.hpp"
#include "resolutions.hpp"
#include "tsing.hpp"

namespace singcalc {

using json = nlohmann::json;

inline void to_json(json& j, const ProjectiveRational& x) {
    j = json{{"num", x.num().str()}, {"den", x.den().str()}};
}

inline void from_json(const json& j, ProjectiveRational& x) {
    x = ProjectiveRational(BigInt(j.at("num").get<std::string>()), BigInt(j.at("den").get<std::string>()));
}

inline void to_json(json& j, const TClassification& t) {
    j = json{{"kind", to_string(t.kind)}, {"d", t.d}, {"m", t.m}, {"a", t.a}};
    if (t.kind == TKind::DuValA) j["k"] = t.k;
}

inline void to_json(json& j, const DecoratedResolution& dec) {
    j = json::object();
    j["nodes"] = json::array();
    for (const auto& node : dec.nodes) {
        json entry{{"s", node.selfint}};
        if (node.block) entry["block"] = *node.block;
        j["nodes"].push_back(std::move(entry));
    }
    j["blocks"] = json::array();
    for (const auto& block : dec.blocks) j["blocks"].push_back(json{{"chain", block.chain}});
}

inline void from_json(const json& j, DecoratedResolution& dec) {
    if (!j.is_object() || !j.contains("nodes") || !j["nodes"].is_array()) {
        throw Error(Errc::MalformedDecoration, "expected an object with a \"nodes\" array");
    }
    dec = DecoratedResolution{};
    for (const auto& block : j.value("blocks", json::array())) {
        ResolutionBlock b;
        b.chain = block.at("chain").get<Chain>();
        if (!b.chain.empty() && is_reduced(b.chain)) b.kind = classify_chain(b.chain);
        dec.blocks.push_back(std::move(b));
    }
    for (const auto& node : j["nodes"]) {
        ResolutionNode n;
        n.selfint = node.at("s").get<int>();
        if (node.contains("block")) n.block = node["block"].get<std::size_t>();
        dec.nodes.push_back(n);
    }
    check_structure(dec);
}

inline void to_json(json& j, const FillingDescriptor& desc) {
    j = json{{"n", desc.n_tuple},
             {"bounds", desc.bounds},
             {"d", desc.d},
             {"singularity", {{"n", desc.singularity.n}, {"a", desc.singularity.a}}}};
}

inline void from_json(const json& j, FillingDescriptor& desc) {
    desc.n_tuple = j.at("n").get<Chain>();
    desc.bounds = j.at("bounds").get<Chain>();
    desc.d = j.at("d").get<std::vector<int>>();
    desc.singularity = {j.at("singularity").at("n").get<std::int64_t>(), j.at("singularity").at("a").get<std::int64_t>()};
}

inline void to_json(json& j, const OpRecord& op) {
    j = json{{"op", to_string(op.kind)}, {"curve", op.curve}, {"before", op.before}, {"after", op.after}};
    if (op.attached_to) j["attached_to"] = *op.attached_to;
    if (op.removed_class) j["boundary_event"] = *op.removed_class;
}

inline const char* to_string(CurveRole role) {
    switch (role) {
    case CurveRole::Interior: return "interior";
    case CurveRole::Boundary: return "boundary";
    case CurveRole::Section: return "section";
    }
    return "?";
}

inline void to_json(json& j, const FamilyState& state) {
    j = json::object();
    j["curves"] = json::array();
    for (const auto& c : state.curves) {
        json entry{{"id", c.id}, {"s", c.selfint}, {"role", to_string(c.role)}};
        if (c.role == CurveRole::Boundary) entry["j"] = c.boundary_index;
        if (c.block) entry["block"] = *c.block;
        j["curves"].push_back(std::move(entry));
    }
    j["ledger"] = json::object();
    for (const auto& [idx, members] : state.ledger) j["ledger"][std::to_string(idx)] = members;
    j["bounds"] = state.bounds;
    j["d"] = state.d;
    j["chain"] = state.snapshot();
}

inline void to_json(json& j, const ValidationReport& r) {
    j = json{{"ok", r.ok()},
             {"blocks_class_t", r.blocks_class_t},
             {"canonical_degrees", r.canonical_degrees},
             {"dominated", r.dominated},
             {"messages", r.messages}};
}

inline json pair_json(const DecoratedResolution& dec, const FillingDescriptor& desc) {
    return json{{"p_resolution", dec}, {"descriptor", desc.n_tuple}, {"filling", filling_name(desc)}};
}

inline void to_json(json& j, const CorrespondenceReport& r) {
    j = json{{"singularity", {{"n", r.singularity.n}, {"a", r.singularity.a}}},
             {"bijective", r.bijective},
             {"k_set_size", r.k_set_size},
             {"bruteforce_count", r.bruteforce_count},
             {"failures", r.failures}};
    j["pairs"] = json::array();
    for (const auto& p : r.pairs) j["pairs"].push_back(pair_json(p.resolution, p.descriptor));
}

inline json error_json(const Error& err) {
    return json{{"error", std::string(to_string(err.code()))}, {"message", err.what()}};
}

namespace detail {

inline std::string dot_node(const std::string& name, int selfint, bool boxed, const std::string& extra = {}) {
    std::string label = selfint > 0 ? "+" + std::to_string(selfint) : std::to_string(selfint);
    std::string out = "  " + name + " [shape=" + (boxed ? "box" : "circle") + ", label=\"" + label + "\"";
    if (!extra.empty()) out += ", " + extra;
    return out + "];\n";
}

} // namespace detail

/// Dual graph of a decorated resolution: circles for kept curves, boxes for
/// curves contracted to a singular point.
inline std::string to_dot(const DecoratedResolution& dec, const std::string& name = "resolution") {
    std::ostringstream out;
    out << "graph " << name << " {\n";
    for (std::size_t i = 0; i < dec.nodes.size(); ++i) {
        out << detail::dot_node("v" + std::to_string(i), dec.nodes[i].selfint, dec.nodes[i].block.has_value());
    }
    for (std::size_t i = 0; i + 1 < dec.nodes.size(); ++i) out << "  v" << i << " -- v" << i + 1 << ";\n";
    out << "}\n";
    return out.str();
}

inline std::string to_dot(const FamilyState& state, const std::string& name = "fiber") {
    std::ostringstream out;
    out << "graph " << name << " {\n";
    for (const auto& c : state.curves) {
        std::string extra;
        if (c.role == CurveRole::Boundary) extra = "xlabel=\"D_" + std::to_string(c.boundary_index) + "\"";
        if (c.role == CurveRole::Section) extra = "xlabel=\"S\"";
        out << detail::dot_node("c" + std::to_string(c.id), c.selfint, c.block.has_value(), extra);
    }
    for (std::size_t i = 0; i + 1 < state.curves.size(); ++i) {
        out << "  c" << state.curves[i].id << " -- c" << state.curves[i + 1].id << ";\n";
    }
    out << "}\n";
    return out.str();
}

} // namespace singcalc
