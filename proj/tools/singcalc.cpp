#include <algorithm>
#include <cctype>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "singcalc/io.hpp"
#include "singcalc/singcalc.hpp"

namespace {

using namespace singcalc;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string tuple_string(const Chain& c) {
    std::string s = to_string(c);
    s.front() = '(';
    s.back() = ')';
    return s;
}

std::optional<std::size_t> step_budget() {
    const char* env = std::getenv("SINGCALC_STEP_BUDGET");
    if (!env || !*env) return std::nullopt;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (*end != '\0') throw UsageError("SINGCALC_STEP_BUDGET must be a nonnegative integer");
    return static_cast<std::size_t>(v);
}

struct Listed {
    DecoratedResolution resolution;
    std::optional<FillingDescriptor> descriptor;
};

// P-resolutions numbered Y_1, Y_2, ... by ascending descriptor. When the
// dual chain has length one there are no descriptors and the exhaustive
// search is used instead.
std::vector<Listed> list_p_resolutions(std::int64_t n, std::int64_t a) {
    std::vector<Listed> out;
    if (expand_fraction(n, n - a).size() < 2) {
        for (auto& dec : enumerate_p_resolutions_bruteforce(n, a)) out.push_back({std::move(dec), std::nullopt});
        return out;
    }
    for (const auto& desc : k_set(n, a)) out.push_back({p_resolution_from_descriptor(desc, n, a), desc});
    return out;
}

DecoratedResolution select_resolution(const std::string& spec, std::int64_t n, std::int64_t a) {
    if (!spec.empty() && std::all_of(spec.begin(), spec.end(), [](unsigned char ch) { return std::isdigit(ch); })) {
        const auto listed = list_p_resolutions(n, a);
        const std::size_t index = std::stoul(spec);
        if (index < 1 || index > listed.size()) {
            throw UsageError("--pres " + spec + ": expected 1.." + std::to_string(listed.size()));
        }
        return listed[index - 1].resolution;
    }
    std::string text = spec;
    if (spec.empty() || spec.front() != '{') {
        std::ifstream in(spec);
        if (!in) throw UsageError("--pres " + spec + ": not an index, JSON object or readable file");
        std::ostringstream buf;
        buf << in.rdbuf();
        text = buf.str();
    }
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& err) {
        throw Error(Errc::InvalidInput, std::string("cannot parse resolution JSON: ") + err.what());
    }
    try {
        return j.get<DecoratedResolution>();
    } catch (const json::exception& err) {
        throw Error(Errc::MalformedDecoration, err.what());
    }
}

void write_dot_frame(const std::filesystem::path& dir, std::size_t index, const std::string& dot) {
    std::filesystem::create_directories(dir);
    char name[32];
    std::snprintf(name, sizeof name, "frame_%03zu.dot", index);
    std::ofstream(dir / name) << dot;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Invariants, P-resolutions and Milnor fibre identification for cyclic quotient surface singularities"};
    app.require_subcommand(1);

    bool as_json = false;
    bool as_dot = false;
    auto* json_flag = app.add_flag("--json", as_json, "JSON output");
    auto* dot_flag = app.add_flag("--dot", as_dot, "Graphviz DOT output");
    json_flag->excludes(dot_flag);

    std::int64_t n = 0;
    std::int64_t a = 0;
    auto add_na = [&](CLI::App* sub) {
        sub->add_option("n", n, "order of the group")->required();
        sub->add_option("a", a, "weight")->required();
    };

    auto* cf = app.add_subcommand("cf", "continued fraction of n/a");
    add_na(cf);

    Chain dual_input;
    auto* dual = app.add_subcommand("dual", "Riemenschneider dual of a chain");
    dual->add_option("entries", dual_input, "chain entries")->required();

    auto* ke = app.add_subcommand("ke", "the set K_e(n/(n-a))");
    add_na(ke);

    auto* maxres = app.add_subcommand("maxres", "maximal resolution with log discrepancies");
    add_na(maxres);

    bool bruteforce = false;
    auto* pres = app.add_subcommand("pres", "list the P-resolutions");
    add_na(pres);
    pres->add_flag("--bruteforce", bruteforce, "use the exhaustive search");

    std::string pres_spec;
    auto* crepant = app.add_subcommand("crepant", "crepant M-resolution of a P-resolution");
    add_na(crepant);
    crepant->add_option("--pres", pres_spec, "index, JSON object or path")->required();

    std::string frames_dir;
    auto* mmp = app.add_subcommand("mmp", "run the controlled MMP; one JSON object per step");
    add_na(mmp);
    mmp->add_option("--pres", pres_spec, "index, JSON object or path")->required();
    mmp->add_option("--dot-frames", frames_dir, "write one DOT file per step into this directory");

    bool all = false;
    auto* identify = app.add_subcommand("identify", "Milnor fibre descriptors of P-resolutions");
    add_na(identify);
    auto* all_flag = identify->add_flag("--all", all, "every P-resolution");
    auto* identify_pres = identify->add_option("--pres", pres_spec, "index, JSON object or path");
    all_flag->excludes(identify_pres);

    auto* verify = app.add_subcommand("verify", "check the P-resolution / K_e bijection");
    add_na(verify);

    std::int64_t max_n = 30;
    std::int64_t min_n = 3;
    auto* sweep = app.add_subcommand("sweep", "verify every coprime pair up to a bound");
    sweep->add_option("--max-n", max_n, "largest n")->required();
    sweep->add_option("--min-n", min_n, "smallest n");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        const int code = app.exit(err);
        return code == 0 ? 0 : 2;
    }

    try {
        const auto budget = step_budget();

        if (cf->parsed()) {
            const Chain c = expand_fraction(n, a);
            std::cout << (as_json ? json(c).dump() : to_string(c)) << "\n";
        } else if (dual->parsed()) {
            const Chain c = dual_chain(dual_input);
            std::cout << (as_json ? json(c).dump() : to_string(c)) << "\n";
        } else if (ke->parsed()) {
            const auto ks = k_set(n, a);
            if (as_json) {
                json out = json::array();
                for (const auto& d : ks) out.push_back(d.n_tuple);
                std::cout << out.dump() << "\n";
            } else {
                for (const auto& d : ks) std::cout << tuple_string(d.n_tuple) << "\n";
            }
        } else if (maxres->parsed()) {
            const auto mr = maximal_resolution(n, a);
            if (as_json) {
                std::cout << json{{"chain", mr.chain}, {"alphas", mr.alphas}}.dump() << "\n";
            } else {
                std::cout << to_string(mr.chain) << "\n";
                for (std::size_t i = 0; i < mr.alphas.size(); ++i) {
                    std::cout << "alpha_" << i + 1 << " = " << mr.alphas[i] << "\n";
                }
            }
        } else if (pres->parsed()) {
            std::vector<Listed> listed;
            if (bruteforce) {
                for (auto& dec : enumerate_p_resolutions_bruteforce(n, a)) listed.push_back({std::move(dec), std::nullopt});
            } else {
                listed = list_p_resolutions(n, a);
            }
            json out = json::array();
            for (std::size_t i = 0; i < listed.size(); ++i) {
                const std::string name = "Y_" + std::to_string(i + 1);
                if (as_dot) {
                    std::cout << to_dot(listed[i].resolution, name);
                } else if (as_json) {
                    json entry{{"name", name}, {"p_resolution", listed[i].resolution}};
                    if (listed[i].descriptor) entry["descriptor"] = listed[i].descriptor->n_tuple;
                    out.push_back(std::move(entry));
                } else {
                    std::cout << name << ": " << to_string(listed[i].resolution);
                    if (listed[i].descriptor) std::cout << "   " << tuple_string(listed[i].descriptor->n_tuple);
                    std::cout << "\n";
                }
            }
            if (as_json) std::cout << out.dump() << "\n";
        } else if (crepant->parsed()) {
            const DecoratedResolution m = crepant_m_resolution(select_resolution(pres_spec, n, a));
            if (as_dot) std::cout << to_dot(m, "crepant");
            else if (as_json) std::cout << json(m).dump() << "\n";
            else std::cout << to_string(m) << "\n";
        } else if (mmp->parsed()) {
            const DecoratedResolution dec = select_resolution(pres_spec, n, a);
            const FamilyState start = compactify(crepant_m_resolution(dec), n, a);
            const MmpTrace trace = run_controlled_mmp(start, budget);
            if (!frames_dir.empty()) {
                // Replay the log so every intermediate state can be drawn.
                FamilyState state = start;
                write_dot_frame(frames_dir, 0, to_dot(state, "step_0"));
                std::size_t k = 0;
                for (const auto& op : trace.final_state.op_log) {
                    state = op.kind == OpKind::Flip ? usual_flip(std::move(state), op.curve)
                                                    : ik_contract(std::move(state), op.curve);
                    ++k;
                    write_dot_frame(frames_dir, k, to_dot(state, "step_" + std::to_string(k)));
                }
            }
            for (const auto& op : trace.final_state.op_log) std::cout << json(op).dump() << "\n";
            Chain tuple;
            for (std::size_t j = 0; j < trace.d_vector.size(); ++j) {
                tuple.push_back(trace.final_state.bounds[j] - trace.d_vector[j]);
            }
            std::cout << json{{"flips", trace.flips},
                              {"contractions", trace.contractions},
                              {"d", trace.d_vector},
                              {"descriptor", tuple}}
                             .dump()
                      << "\n";
        } else if (identify->parsed()) {
            std::vector<DecoratedResolution> inputs;
            if (!pres_spec.empty()) {
                inputs.push_back(select_resolution(pres_spec, n, a));
            } else {
                for (auto& l : list_p_resolutions(n, a)) inputs.push_back(std::move(l.resolution));
            }
            json out = json::array();
            for (const auto& dec : inputs) out.push_back(pair_json(dec, milnor_fiber_descriptor(dec, n, a, budget)));
            std::cout << (pres_spec.empty() ? out.dump() : out.front().dump()) << "\n";
        } else if (verify->parsed()) {
            const auto report = verify_correspondence(n, a);
            if (as_json) {
                std::cout << json(report).dump() << "\n";
            } else {
                std::cout << "bijective: " << (report.bijective ? "true" : "false") << " (" << report.pairs.size()
                          << " pairs)\n";
                for (const auto& f : report.failures) std::cout << "  " << f << "\n";
            }
            return report.bijective ? 0 : 1;
        } else if (sweep->parsed()) {
            std::size_t checked = 0, degenerate = 0, failed = 0;
            json failures = json::array();
            for (std::int64_t nn = min_n; nn <= max_n; ++nn) {
                for (std::int64_t aa = 1; aa < nn; ++aa) {
                    if (std::gcd(nn, aa) != 1) continue;
                    if (expand_fraction(nn, nn - aa).size() < 2) {
                        ++degenerate;
                        continue;
                    }
                    ++checked;
                    const auto report = verify_correspondence(nn, aa);
                    if (!report.bijective) {
                        ++failed;
                        failures.push_back(report);
                    }
                }
            }
            if (as_json) {
                std::cout << json{{"checked", checked}, {"degenerate", degenerate}, {"failed", failed},
                                  {"failures", failures}}
                                 .dump()
                          << "\n";
            } else {
                std::cout << "checked " << checked << " pairs, " << failed << " failures (" << degenerate
                          << " with dual length 1 skipped)\n";
                for (const auto& f : failures) std::cout << "  " << f.dump() << "\n";
            }
            return failed == 0 ? 0 : 1;
        }
    } catch (const UsageError& err) {
        std::cerr << err.what() << "\n";
        return 2;
    } catch (const Error& err) {
        std::cerr << error_json(err).dump() << "\n";
        return 1;
    }
    return 0;
}
