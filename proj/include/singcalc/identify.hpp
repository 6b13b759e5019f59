#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cfrac.hpp"
#include "error.hpp"
#include "kset.hpp"
#include "mmp.hpp"
#include "resolutions.hpp"

namespace singcalc {

struct Identification {
    FillingDescriptor descriptor;
    MmpTrace trace;
};

/// Runs the MMP on the compactified crepant M-resolution and reads off
/// n_i = a_i - d_i.
inline Identification identify_milnor_fiber(const DecoratedResolution& dec, std::int64_t n, std::int64_t a,
                                            std::optional<std::size_t> budget = std::nullopt) {
    const DecoratedResolution m_res = crepant_m_resolution(dec);
    Identification out;
    out.trace = run_controlled_mmp(compactify(m_res, n, a), budget);

    FillingDescriptor& desc = out.descriptor;
    desc.bounds = out.trace.final_state.bounds;
    desc.singularity = {n, a};
    desc.d = out.trace.d_vector;
    for (std::size_t j = 0; j < desc.bounds.size(); ++j) desc.n_tuple.push_back(desc.bounds[j] - desc.d[j]);

    const auto ks = k_set(n, a);
    if (!ks.count(desc)) throw Error(Errc::NotInK, to_string(desc.n_tuple) + " is not in K");
    return out;
}

inline FillingDescriptor milnor_fiber_descriptor(const DecoratedResolution& dec, std::int64_t n, std::int64_t a,
                                                 std::optional<std::size_t> budget = std::nullopt) {
    return identify_milnor_fiber(dec, n, a, budget).descriptor;
}

/// The converse construction. The boundary D_e, ..., D_1 (with D_1 at -a_1,
/// an extra D_0 being implicit) carries d_i attached (-1)-curves; each pass
/// emits one singular block and one kept curve, from the boundary side
/// inwards.
inline DecoratedResolution p_resolution_from_descriptor(const FillingDescriptor& desc, std::int64_t n,
                                                        std::int64_t a) {
    const auto ks = k_set(n, a);
    if (!ks.count(desc)) throw Error(Errc::InvalidDescriptor, to_string(desc.n_tuple) + " is not in K");

    struct Curve {
        int id;
        int selfint;
        int attached;
    };
    const std::size_t e = desc.bounds.size();
    std::vector<Curve> boundary; // front is the current image of D_e
    for (std::size_t j = e; j >= 1; --j) {
        boundary.push_back({static_cast<int>(j), -desc.bounds[j - 1], desc.bounds[j - 1] - desc.n_tuple[j - 1]});
    }

    struct Segment {
        Chain block; // empty for a kept curve
        int selfint = 0;
    };
    std::vector<Segment> emitted;

    auto contract = [&](std::size_t i) {
        if (i > 0) ++boundary[i - 1].selfint;
        if (i + 1 < boundary.size()) ++boundary[i + 1].selfint;
        boundary.erase(boundary.begin() + static_cast<std::ptrdiff_t>(i));
    };

    const std::size_t max_passes = 4 * (e + 1) * (e + 1);
    for (std::size_t pass = 0;; ++pass) {
        if (pass > max_passes || boundary.empty()) {
            throw Error(Errc::InvalidDescriptor, "backward construction did not terminate for " + to_string(desc.n_tuple));
        }
        const bool case_a = boundary.front().attached != 0;
        std::size_t target = 0;
        if (case_a) {
            emitted.push_back({Chain(static_cast<std::size_t>(boundary.front().attached - 1), 2), 0});
        } else {
            std::size_t r = 0;
            while (r + 1 < boundary.size() && boundary[r + 1].attached == 0) ++r;
            if (r + 1 >= boundary.size()) {
                throw Error(Errc::InvalidDescriptor, "no attached curves left for " + to_string(desc.n_tuple));
            }
            Chain head;
            for (std::size_t i = 0; i <= r; ++i) head.push_back(-boundary[i].selfint);
            if (!is_reduced(head)) {
                throw Error(Errc::InvalidDescriptor, "boundary image " + to_string(head) + " is not reduced");
            }
            const ProjectiveRational value = eval_chain(head);
            const std::int64_t np = value.num().convert_to<std::int64_t>();
            const std::int64_t ap = value.den().convert_to<std::int64_t>();
            const std::int64_t dd = boundary[r + 1].attached;
            emitted.push_back({expand_fraction(dd * np * np, dd * np * ap - 1), 0});
            target = r + 1;
        }

        // II: the attached curves on the target go first, then boundary
        // images that reach -1 with nothing attached, nearest the front.
        boundary[target].selfint += boundary[target].attached;
        boundary[target].attached = 0;
        const int front_id = boundary.front().id;
        bool front_gone = false;
        int m = 0;
        for (;;) {
            auto it = std::find_if(boundary.begin(), boundary.end(),
                                   [](const Curve& c) { return c.selfint == -1 && c.attached == 0; });
            if (it == boundary.end()) break;
            if (it->id == front_id) front_gone = true;
            if (front_gone) ++m;
            contract(static_cast<std::size_t>(it - boundary.begin()));
        }

        // III
        if (boundary.size() == 1 && boundary.front().selfint == 0 && boundary.front().attached == 0) break;
        emitted.push_back({{}, case_a ? -(2 + m) : -(1 + m)});
    }

    DecoratedResolution out;
    for (auto it = emitted.rbegin(); it != emitted.rend(); ++it) {
        if (it->selfint != 0) out.add_kept(it->selfint);
        else out.add_block(it->block);
    }
    return out;
}

struct CorrespondencePair {
    DecoratedResolution resolution;
    FillingDescriptor descriptor;
};

struct CorrespondenceReport {
    SingularityType singularity;
    std::vector<CorrespondencePair> pairs;
    bool bijective = false;
    std::size_t k_set_size = 0;
    std::size_t bruteforce_count = 0;
    std::vector<std::string> failures;
};

/// Both directions of the correspondence for one singularity, checked
/// against k_set and against the brute-force P-resolution list.
inline CorrespondenceReport verify_correspondence(std::int64_t n, std::int64_t a, std::int64_t bound = 60) {
    CorrespondenceReport report;
    report.singularity = {n, a};
    const auto ks = k_set(n, a);
    report.k_set_size = ks.size();

    std::set<Chain> image;
    bool injective = true;
    for (const FillingDescriptor& desc : ks) {
        const std::string tag = to_string(desc.n_tuple);
        try {
            const DecoratedResolution dec = p_resolution_from_descriptor(desc, n, a);
            const ValidationReport v = validate_p_resolution(dec, n, a);
            if (!v.ok()) {
                std::string why;
                for (const auto& msg : v.messages) why += "; " + msg;
                report.failures.push_back(tag + ": reconstructed " + to_string(dec) + " is not a P-resolution" + why);
                continue;
            }
            const FillingDescriptor back = milnor_fiber_descriptor(dec, n, a);
            if (!(back == desc)) {
                report.failures.push_back(tag + ": " + to_string(dec) + " maps back to " + to_string(back.n_tuple));
            }
            report.pairs.push_back({dec, back});
        } catch (const Error& err) {
            report.failures.push_back(tag + ": " + err.what());
        }
    }

    const auto brute = enumerate_p_resolutions_bruteforce(n, a, bound);
    report.bruteforce_count = brute.size();
    if (brute.size() != ks.size()) {
        report.failures.push_back("k_set has " + std::to_string(ks.size()) + " elements, brute force finds " +
                                  std::to_string(brute.size()) + " P-resolutions");
    }
    for (const DecoratedResolution& dec : brute) {
        try {
            const FillingDescriptor desc = milnor_fiber_descriptor(dec, n, a);
            if (!image.insert(desc.n_tuple).second) {
                injective = false;
                report.failures.push_back(to_string(dec) + ": descriptor " + to_string(desc.n_tuple) + " repeats");
            }
            const DecoratedResolution back = p_resolution_from_descriptor(desc, n, a);
            if (!(back == dec)) {
                report.failures.push_back(to_string(dec) + " -> " + to_string(desc.n_tuple) + " -> " + to_string(back));
            }
        } catch (const Error& err) {
            report.failures.push_back(to_string(dec) + ": " + err.what());
        }
    }

    std::set<Chain> k_tuples;
    for (const auto& desc : ks) k_tuples.insert(desc.n_tuple);
    report.bijective = injective && image == k_tuples && report.failures.empty();
    std::sort(report.pairs.begin(), report.pairs.end(),
              [](const CorrespondencePair& x, const CorrespondencePair& y) { return x.descriptor < y.descriptor; });
    return report;
}

} // namespace singcalc
