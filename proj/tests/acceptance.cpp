// Acceptance run: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "singcalc/io.hpp"
#include "singcalc/singcalc.hpp"

using namespace singcalc;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void fail(const std::string& why) {
        if (pass) detail = why;
        pass = false;
    }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

ProjectiveRational frac(std::int64_t n, std::int64_t d) { return {BigInt(n), BigInt(d)}; }

template <class F>
void for_each_coprime(std::int64_t lo, std::int64_t hi, F&& f) {
    for (std::int64_t n = lo; n <= hi; ++n) {
        for (std::int64_t a = 1; a < n; ++a) {
            if (std::gcd(n, a) == 1) f(n, a);
        }
    }
}

DecoratedResolution y3() { return DecoratedResolution{}.add_block({4}).add_kept(-1).add_block({5, 2}); }

Outcome continued_fractions() {
    Outcome o;
    const auto t0 = Clock::now();
    const bool ok = expand_fraction(19, 7) == Chain{3, 4, 2} && expand_fraction(19, 12) == Chain{2, 3, 2, 3} &&
                    dual_chain({3, 4, 2}) == Chain{2, 3, 2, 3};
    const double ms = seconds_since(t0) * 1000;
    if (!ok) o.fail("expansion mismatch");
    if (ms >= 1.0) o.fail("took " + std::to_string(ms) + " ms");
    if (o.pass) o.detail = std::to_string(ms) + " ms";
    return o;
}

Outcome maximal() {
    Outcome o;
    const auto mr = maximal_resolution(19, 7);
    if (mr.chain != Chain{4, 2, 1, 7, 1, 3}) o.fail("chain " + to_string(mr.chain));
    const std::vector<std::int64_t> nums{8, 13, 18, 5, 17, 12};
    if (mr.alphas.size() != nums.size()) {
        o.fail("wrong number of alphas");
        return o;
    }
    for (std::size_t i = 0; i < nums.size(); ++i) {
        if (mr.alphas[i] != frac(nums[i], 19)) o.fail("alpha_" + std::to_string(i + 1) + " = " + mr.alphas[i].to_string());
    }
    return o;
}

Outcome kset() {
    Outcome o;
    std::set<Chain> got;
    for (const auto& d : k_set(19, 7)) got.insert(d.n_tuple);
    if (got != std::set<Chain>{{1, 2, 2, 1}, {1, 3, 1, 2}, {2, 2, 1, 3}}) o.fail("unexpected K-set");
    return o;
}

Outcome reconstruction() {
    Outcome o;
    const json golden = json::parse(oracle::read_file(GOLDEN_DIR "/cyclic-19-7-p-resolution/p_resolutions.json"));
    const auto ks = k_set(19, 7);
    auto it = ks.begin();
    for (const auto& entry : golden) {
        if (it == ks.end()) {
            o.fail("K-set too small");
            break;
        }
        const auto expected = entry["p_resolution"].get<DecoratedResolution>();
        const auto got = p_resolution_from_descriptor(*it, 19, 7);
        if (!(got == expected)) {
            o.fail(entry["name"].get<std::string>() + ": got " + to_string(got) + ", expected " + to_string(expected));
        }
        ++it;
    }
    return o;
}

Outcome identification() {
    Outcome o;
    const auto id = identify_milnor_fiber(y3(), 19, 7);
    if (id.descriptor.n_tuple != Chain{2, 2, 1, 3}) o.fail("descriptor " + to_string(id.descriptor.n_tuple));
    if (id.trace.flips != 2) o.fail(std::to_string(id.trace.flips) + " flips");
    std::vector<int> attached;
    for (const auto& dc : id.trace.final_state.discovered) attached.push_back(dc.attachments.begin()->first);
    if (attached != std::vector<int>{3, 2}) o.fail("discovered curves attach in the wrong places");

    const auto golden = oracle::read_lines(GOLDEN_DIR "/cyclic-19-7-mmp/y3_central_fibers.txt");
    const auto& log = id.trace.final_state.op_log;
    if (log.size() + 1 < golden.size()) {
        o.fail("op log too short");
        return o;
    }
    if (log[0].before != golden[0]) o.fail("initial fibre " + log[0].before);
    for (std::size_t k = 1; k < golden.size(); ++k) {
        if (log[k - 1].after != golden[k]) o.fail("step " + std::to_string(k) + ": " + log[k - 1].after);
    }
    return o;
}

Outcome sweep() {
    Outcome o;
    const auto t0 = Clock::now();
    std::size_t pairs = 0, degenerate = 0;
    for_each_coprime(3, 30, [&](std::int64_t n, std::int64_t a) {
        const std::string tag = std::to_string(n) + "/" + std::to_string(a);
        if (oracle::expansion(n, n - a).size() < 2) {
            // Dual chain of length one: rejected with the dedicated error.
            try {
                k_set(n, a);
                o.fail(tag + ": k_set accepted e = 1");
            } catch (const Error& err) {
                if (err.code() != Errc::DegenerateLength) o.fail(tag + ": " + err.what());
            }
            ++degenerate;
            return;
        }
        const auto r = verify_correspondence(n, a);
        ++pairs;
        if (!r.bijective) o.fail(tag + ": " + (r.failures.empty() ? "not bijective" : r.failures.front()));
        if (r.k_set_size != r.bruteforce_count) o.fail(tag + ": size mismatch");
    });
    const double s = seconds_since(t0);
    if (s >= 300) o.fail("took " + std::to_string(s) + " s");
    if (o.pass) {
        o.detail = std::to_string(pairs) + " pairs bijective, " + std::to_string(degenerate) + " with e = 1 rejected, " +
                   std::to_string(s) + " s";
    }
    return o;
}

Outcome flip_equivalence() {
    Outcome o;
    std::size_t cases = 0;
    for (const Chain& w : generate_wahl_chains(6)) {
        const std::size_t s = w.size();
        std::size_t i = s;
        while (w[i - 1] == 2) --i;
        Chain closed(w.begin() + 1, w.begin() + static_cast<std::ptrdiff_t>(i));
        if (!closed.empty()) --closed.back();
        Chain contracted = w;
        --contracted.back();

        for (int config = 0; config < 12; ++config) {
            const bool block_left = config & 1;
            const bool with_a = config & 2;
            const int r_mode = config >> 2; // 0 none, 1 plain, 2 in a ledger class

            FamilyState st;
            auto push = [&](int selfint, bool in_block, int j) {
                const int id = static_cast<int>(st.curves.size());
                CurveRecord rec{id, selfint, j ? CurveRole::Boundary : CurveRole::Interior, j, std::nullopt};
                if (in_block) rec.block = 0;
                if (j) st.ledger[j] = {id};
                st.curves.push_back(rec);
            };
            std::vector<std::tuple<int, bool, int>> specs;
            if (with_a) specs.emplace_back(-3, false, 0);
            for (int e : w) specs.emplace_back(-e, true, 0);
            specs.emplace_back(-1, false, 0);
            if (r_mode) specs.emplace_back(-3, false, r_mode == 2 ? 1 : 0);
            if (!block_left) std::reverse(specs.begin(), specs.end());
            for (const auto& [si, b, j] : specs) push(si, b, j);
            st.bounds = {2};
            st.d = {0};
            st.next_block = 1;

            int c = -1, e1 = -1;
            for (std::size_t p = 0; p < st.curves.size(); ++p) {
                if (!st.curves[p].block && st.curves[p].selfint == -1) c = st.curves[p].id;
            }
            for (std::size_t p = 0; p < st.curves.size(); ++p) {
                if (st.curves[p].block) {
                    e1 = st.curves[p].id;
                    if (block_left) break;
                }
            }
            const std::string tag = to_string(w) + " config " + std::to_string(config);
            try {
                const FamilyState after = usual_flip(st, c);
                Chain got;
                for (int b : after.block_ids()) got = after.block_chain(b);
                if (!block_left) std::reverse(got.begin(), got.end());
                if (got != closed) o.fail(tag + ": block " + to_string(got) + ", closed form " + to_string(closed));
                const auto pos = after.position_of(e1);
                if (!pos) {
                    o.fail(tag + ": E_1 contracted");
                    continue;
                }
                Chain image{-after.curves[*pos].selfint};
                image.insert(image.end(), closed.begin(), closed.end());
                if (eval_chain(image) != eval_chain(contracted)) o.fail(tag + ": Delta/Omega differs");
            } catch (const Error& err) {
                o.fail(tag + ": " + err.what());
            }
            ++cases;
        }
    }
    if (o.pass) o.detail = std::to_string(cases) + " configurations";
    return o;
}

Outcome wahl_invariants() {
    Outcome o;
    std::size_t chains = 0;
    for (const Chain& c : generate_wahl_chains(8)) {
        ++chains;
        const std::string tag = to_string(c);
        const WahlData w = wahl_data(c);
        if (eval_chain(c) != frac(w.m * w.m, w.m * w.a - 1)) o.fail(tag + ": value");
        const auto linear = discrepancies(c);
        if (linear.front() + linear.back() != ProjectiveRational(-1)) o.fail(tag + ": end discrepancies");
        const auto dense = oracle::discrepancies(c);
        std::size_t ones = 0;
        for (std::size_t i = 0; i < c.size(); ++i) {
            const ProjectiveRational expected = frac(w.nu[i] - w.m, w.m);
            if (linear[i] != expected) o.fail(tag + ": discrepancy " + std::to_string(i + 1));
            const ProjectiveRational d(boost::multiprecision::numerator(dense[i]), boost::multiprecision::denominator(dense[i]));
            if (d != expected) o.fail(tag + ": dense discrepancy " + std::to_string(i + 1));
            if (w.nu[i] == 1) {
                ++ones;
                if (w.initial_index != i + 1) o.fail(tag + ": initial index");
            }
        }
        if (ones != 1) o.fail(tag + ": " + std::to_string(ones) + " entries with nu = 1");
    }
    if (wahl_data({2, 6, 2, 3}).initial_index != 2) o.fail("[2,6,2,3] initial curve is not E_2");
    if (wahl_data({2, 2, 2, 2, 2, 7, 2, 2, 7}).initial_index != 6) o.fail("[2,2,2,2,2,7,2,2,7] initial curve is not E_6");
    if (o.pass) o.detail = std::to_string(chains) + " chains";
    return o;
}

Outcome duality() {
    Outcome o;
    const auto t0 = Clock::now();
    std::size_t count = 0;
    for_each_coprime(2, 200, [&](std::int64_t n, std::int64_t a) {
        const Chain c = expand_fraction(n, a);
        const Chain d = dual_chain(c);
        const std::string tag = std::to_string(n) + "/" + std::to_string(a);
        if (d != expand_fraction(n, n - a)) o.fail(tag + ": dual is not n/(n-a)");
        if (dual_chain(d) != c) o.fail(tag + ": duality not an involution");
        Chain joined = c;
        joined.push_back(1);
        joined.insert(joined.end(), d.rbegin(), d.rend());
        if (!is_zero_chain(joined).zero) o.fail(tag + ": joined chain is not zero");
        ++count;
    });
    const double s = seconds_since(t0);
    if (s >= 30) o.fail("took " + std::to_string(s) + " s");
    if (o.pass) o.detail = std::to_string(count) + " pairs, " + std::to_string(s) + " s";
    return o;
}

Outcome degenerate_inputs() {
    Outcome o;
    for (std::int64_t p = 3; p <= 30; ++p) {
        try {
            k_set(p, p - 1);
            o.fail("k_set(" + std::to_string(p) + "," + std::to_string(p - 1) + ") accepted");
        } catch (const Error& err) {
            if (err.code() != Errc::DegenerateLength) o.fail(err.what());
        }
    }

    // A (-1)-curve between two Wahl points is an mk2A position.
    FamilyState st;
    st.curves = {{0, -4, CurveRole::Interior, 0, 0}, {1, -1, CurveRole::Interior, 0, std::nullopt},
                 {2, -4, CurveRole::Interior, 0, 1}};
    st.next_block = 2;
    try {
        usual_flip(st, 1);
        o.fail("mk2A flip accepted");
    } catch (const Error& err) {
        if (err.code() != Errc::NotMk1A) o.fail(std::string("mk2A rejected with ") + err.what());
    }

    std::size_t runs = 0;
    for_each_coprime(3, 30, [&](std::int64_t n, std::int64_t a) {
        if (oracle::expansion(n, n - a).size() < 2) return;
        for (const auto& dec : enumerate_p_resolutions_bruteforce(n, a)) {
            try {
                identify_milnor_fiber(dec, n, a);
            } catch (const Error& err) {
                if (err.code() == Errc::AmbiguousAttachment) {
                    o.fail(std::to_string(n) + "/" + std::to_string(a) + " " + to_string(dec) + ": " + err.what());
                }
            }
            ++runs;
        }
    });
    if (o.pass) o.detail = "mk2A -> not-mk1A; no ambiguous attachment in " + std::to_string(runs) + " runs";
    return o;
}

} // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"continued fractions of 19/7", continued_fractions},
        {"maximal resolution of 1/19(1,7)", maximal},
        {"K-set of 1/19(1,7)", kset},
        {"P-resolutions Y_1..Y_3 from descriptors", reconstruction},
        {"MMP identification of Y_3", identification},
        {"correspondence sweep 3 <= n <= 30", sweep},
        {"cascade flip vs closed form", flip_equivalence},
        {"Wahl chain invariants", wahl_invariants},
        {"duality and zero identity, n <= 200", duality},
        {"degenerate inputs", degenerate_inputs},
    };
    int failed = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        Outcome o;
        try {
            o = criteria[k].second();
        } catch (const std::exception& err) {
            o.fail(std::string("exception: ") + err.what());
        }
        if (!o.pass) ++failed;
        std::cout << (o.pass ? "PASS" : "FAIL") << "  " << k + 1 << ". " << criteria[k].first;
        if (!o.detail.empty()) std::cout << " (" << o.detail << ")";
        std::cout << std::endl;
    }
    std::cout << criteria.size() - static_cast<std::size_t>(failed) << "/" << criteria.size() << " criteria pass\n";
    return failed == 0 ? 0 : 1;
}
