// Copyright 2026 The wpf Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "oracles.hpp"
#include "wpf/algebras.hpp"
#include "wpf/games.hpp"
#include "wpf/qsim.hpp"
#include "wpf/slp.hpp"

using namespace wpf;

namespace {

struct Verdict {
    bool pass;
    std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char *f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

GameConfig config(std::string_view adversary, std::uint64_t trials, std::uint64_t seed = 1) {
    GameConfig cfg;
    cfg.adversary = AdversarySpec::parse(adversary);
    cfg.trials = trials;
    cfg.master_seed = seed;
    return cfg;
}

Verdict order_finding_average_game() {
    const auto t0 = std::chrono::steady_clock::now();
    const TrialReport r =
        run_average_game(Family::parse("zn-star", "15,21,33,35,77,91"), config("inf:exact", 200));
    const double secs = seconds_since(t0);
    const bool pass = r.successes == 200 && r.trials == 200 && r.rejected == 0 && r.estimate == 1.0 && secs < 5.0;
    return {pass, fmt("successes %llu/%llu, rejected %llu, %.2fs (limit 5s)", (unsigned long long)r.successes,
                      (unsigned long long)r.trials, (unsigned long long)r.rejected, secs)};
}

Verdict membership_worst_case_game() {
    const auto t0 = std::chrono::steady_clock::now();
    const Family f = Family::parse("elem-abelian", "p=2,k=2..4");
    bool pass = true;
    std::string detail;
    for (std::uint64_t k : {2u, 3u, 4u}) {
        GameConfig cfg = config("fin:exact", 1);
        cfg.k = k;
        cfg.pi = Poly::parse("k+1");
        const TrialReport r = run_worstcase_game(f, cfg, std::uint64_t{1} << 20);
        const bool ok = r.per_instance_min == 1.0 && r.certificate_mismatches == 0 && !r.partial &&
                        r.instances == (std::uint64_t{1} << (k * (k + 1)));
        pass = pass && ok;
        detail += fmt("k=%llu: min %.1f over %llu instances, mismatches %llu; ", (unsigned long long)k,
                      r.per_instance_min.value_or(-1.0), (unsigned long long)r.instances,
                      (unsigned long long)r.certificate_mismatches.value_or(~0ull));
    }
    const double secs = seconds_since(t0);
    pass = pass && secs < 60.0;
    return {pass, detail + fmt("%.2fs (limit 60s)", secs)};
}

Verdict reduct_pipeline() {
    const TrialReport r = end_to_end_theorem_demo(Family::parse("ring-zn", "6..30"), GroupSymbols::additive(),
                                                  config("inf:exact", 1));
    const bool pass = r.per_instance_min == 1.0 && r.demo && r.successes == r.trials && r.successes > 0 &&
                      r.demo->full_accepts == r.successes && r.demo->rewrap_accepts == r.successes;
    return {pass, fmt("min %.1f, successes %llu/%llu, full-variety accepts %llu, re-wrapped accepts %llu",
                      r.per_instance_min.value_or(-1.0), (unsigned long long)r.successes,
                      (unsigned long long)r.trials, (unsigned long long)(r.demo ? r.demo->full_accepts : 0),
                      (unsigned long long)(r.demo ? r.demo->rewrap_accepts : 0))};
}

Verdict reachability_bound() {
    Rng rng(2024);
    std::size_t cases = 0, violations = 0, misses = 0;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> elementary;
    for (std::uint32_t p : {2u, 3u, 5u, 7u, 11u, 13u}) {
        for (std::uint32_t k = 1, size = p; size <= 256; ++k, size *= p) elementary.emplace_back(p, k);
    }
    while (cases < 600) {
        FiniteAlgebra alg = [&] {
            switch (cases % 3) {
                case 0: return zn_add(static_cast<std::uint32_t>(2 + rng.below(255)));
                case 1: {
                    const auto [p, k] = elementary[rng.below(elementary.size())];
                    return elementary_abelian(p, k);
                }
                default: {
                    std::uint32_t n;
                    do n = static_cast<std::uint32_t>(3 + rng.below(398));
                    while (oracle::units(n).size() > 256);
                    return zn_star(n);
                }
            }
        }();
        std::vector<Elem> g;
        for (std::size_t i = 0, m = 1 + rng.below(4); i < m; ++i) g.push_back(static_cast<Elem>(rng.below(alg.size())));
        const std::vector<Elem> closure = subalgebra_closure(alg, g);
        const Elem target = closure[rng.below(closure.size())];
        const BfsResult r = shortest_slp_bfs(alg, std::span<const Elem>(g), target, 100'000'000);
        ++cases;
        if (r.status != BfsStatus::Found || run(*r.slp, alg, std::span<const Elem>(g)) != target) {
            ++misses;
            continue;
        }
        const double bound = std::pow(1.0 + std::log2(static_cast<double>(alg.size())), 2.0);
        if (static_cast<double>(r.slp->length()) > bound) ++violations;
    }
    return {violations == 0 && misses == 0,
            fmt("%zu cases, %zu bound violations, %zu wrong or missing programs", cases, violations, misses)};
}

Verdict commutation() {
    struct Case {
        VarietySpec v;
        FiniteAlgebra alg;
    };
    const std::vector<Case> cases = {
        {VarietySpec::all_algebras(ring_signature()), ring_zn(6)},
        {VarietySpec::all_groups(), dihedral(6)},
        {VarietySpec::abelian_groups(), zn_add(35)},
        {VarietySpec::abelian_groups(), zn_star(77)},
        {VarietySpec::abelian_groups_exp(6), zn_add(6)},
        {VarietySpec::elementary_abelian(3), elementary_abelian(3, 3)},
        {VarietySpec::abelian_groups(GroupSymbols::additive()), ring_zn(10)},
        {VarietySpec::all_groups(), direct_power(dihedral(3), 2)},
    };
    Rng rng(99);
    std::size_t violations = 0;
    const std::size_t total = 10'000;
    for (std::size_t i = 0; i < total; ++i) {
        const Case &c = cases[i % cases.size()];
        const std::size_t m = 1 + rng.below(4);
        const Slp u = oracle::random_slp(rng, m, c.v.signature(), 16);
        std::vector<Elem> g;
        for (std::size_t j = 0; j < m; ++j) g.push_back(static_cast<Elem>(rng.below(c.alg.size())));
        if (run(u, c.alg, std::span<const Elem>(g)) != eval_free(to_free(u, c.v), c.alg, g)) ++violations;
    }
    return {violations == 0, fmt("%zu programs, %zu violations", total, violations)};
}

Verdict alpha_bijection() {
    std::size_t violations = 0, strings = 0;
    for (std::size_t n = 0; n <= 12; ++n) {
        std::set<std::string> image;
        for (std::size_t len = 0; len <= n; ++len) {
            for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << len); ++bits) {
                std::string u(len, '0');
                for (std::size_t i = 0; i < len; ++i) u[i] = ((bits >> i) & 1) ? '1' : '0';
                const std::string t = alpha_pad(n, u);
                ++strings;
                if (t.size() != n + 1 || t == std::string(n + 1, '0') || alpha_unpad(n, t) != u) ++violations;
                image.insert(t);
            }
        }
        if (image.size() != (std::size_t{1} << (n + 1)) - 1) ++violations;
        try {
            alpha_unpad(n, std::string(n + 1, '0'));
            ++violations;
        } catch (const Error &e) {
            if (e.kind() != ErrorKind::NoPreimage) ++violations;
        }
    }
    return {violations == 0, fmt("n = 0..12, %zu strings, %zu violations", strings, violations)};
}

Verdict oracle_conversions() {
    bool pass = true;
    std::string detail;
    double worst = 0.0;
    for (const FiniteAlgebra &alg : {zn_add(5), zn_add(6), elementary_abelian(2, 2), elementary_abelian(2, 3)}) {
        const BlackBoxAlgebra bb = wrap(alg, min_width(alg.size()), 5);
        const qsim::ConversionReport r = qsim::check_conversions(bb);
        for (const qsim::CircuitCheck *c : {&r.pair_m, &r.pair_m_inv, &r.oracle_mul, &r.oracle_inv, &r.oracle_one,
                                            &r.round_mul, &r.round_inv, &r.round_one}) {
            worst = std::max(worst, c->max_amplitude_error);
        }
        pass = pass && r.ok();
        detail += alg.name() + (r.ok() ? " ok; " : " MISMATCH; ");
    }
    pass = pass && worst <= 1e-12;
    return {pass, detail + fmt("max amplitude error %.3g (limit 1e-12)", worst)};
}

Verdict toy_order_finding() {
    const auto t0 = std::chrono::steady_clock::now();
    const FiniteAlgebra z15 = zn_star(15);
    BlackBoxAlgebra bb = wrap(z15, 3, 15);
    Rng rng(8);
    const qsim::QpeResult r = qsim::order_find_qpe(bb, {}, bb.encode(*z15.find_label("2")),
                                                   qsim::QpeOptions{8, 200, 26, Exec::Parallel}, rng);
    std::size_t hits = 0, bad = 0;
    for (const qsim::QpeShot &s : r.shots) {
        if (!s.verified) continue;
        if (oracle::pow_mod(2, *s.verified, 15) != 1) ++bad;
        if (*s.verified % 4 == 0) ++hits;
    }
    const double secs = seconds_since(t0);
    const bool pass = r.shots.size() == 200 && hits * 10 >= 3 * r.shots.size() && bad == 0 && secs < 30.0;
    return {pass, fmt("%zu/%zu shots verified a multiple of 4 (need 30%%), %zu bad values, %.2fs (limit 30s)", hits,
                      r.shots.size(), bad, secs)};
}

Verdict min_below_average() {
    struct Case {
        const char *family, *params, *adversary;
        std::uint64_t k;
        const char *pi;
    };
    const std::vector<Case> matrix = {
        {"zn-add", "2..12", "inf:exact", 1, "1"},        {"zn-add", "2..12", "fin:exact", 1, "2"},
        {"zn-add", "2..12", "fail", 1, "1"},             {"zn-star", "15,21,33,35", "inf:exact", 1, "2"},
        {"zn-star", "15,21", "fin:exact", 1, "2"},       {"elem-abelian", "p=2,k=1..3", "fin:exact", 2, "k"},
        {"elem-abelian", "p=2,k=1..3", "fin:exact", 2, "k+1"}, {"elem-abelian", "p=3,k=1..2", "fin:exact", 2, "2"},
        {"elem-abelian", "p=3,k=1..2", "inf:exact", 1, "1"},   {"direct-power", "base=zn-add:4,e=1..2", "fin:exact", 2, "2"},
        {"direct-power", "base=zn-star:15,e=1..2", "inf:exact", 2, "1"},
    };
    std::size_t violations = 0, reports = 0;
    for (const Case &c : matrix) {
        GameConfig cfg = config(c.adversary, 1);
        cfg.k = c.k;
        cfg.pi = Poly::parse(c.pi);
        if (!cfg.adversary.deterministic()) continue;
        const TrialReport r = run_worstcase_game(Family::parse(c.family, c.params), cfg);
        ++reports;
        // Both figures come from the same enumerated instance set. Deterministic
        // outcomes are 0/1, so the minimum is 1 exactly when every instance succeeds.
        const double expected_min = r.successes == r.trials ? 1.0 : 0.0;
        if (r.partial || r.per_instance_min != expected_min || expected_min > r.estimate) ++violations;
    }
    return {violations == 0, fmt("%zu deterministic configurations, %zu violations", reports, violations)};
}

Verdict byte_identical_reports() {
    const std::vector<std::vector<std::string>> commands = {
        {"game", "avg", "--family", "zn-star", "--params", "15,21,33,35,77,91", "--adversary", "inf:eps=0.5",
         "--seed", "3"},
        {"game", "worst", "--family", "elem-abelian", "--params", "p=2,k=2", "--k", "2", "--pi", "3", "--adversary",
         "fin:eps=0.5", "--trials", "4", "--seed", "3"},
        {"demo", "theorem", "--family", "ring-zn", "--params", "6..30", "--gamma", "additive", "--seed", "3"},
        {"curve", "--family", "zn-star", "--params", "15,21", "--adversary", "inf:eps=0.3", "--ks", "1,2,3"},
        {"slp", "search", "--algebra", "zn-star:91", "--gens", "2,3", "--target", "5"},
        {"wrap", "--algebra", "elem-abelian:2^3", "--seed", "3"},
        {"attack", "inf", "--family", "zn-star", "--params", "21", "--index", "21", "--oracle", "qpe", "--seed", "3"},
        {"attack", "fin", "--family", "elem-abelian", "--params", "p=3,k=2", "--index", "3^2", "-m", "4", "--seed",
         "3"},
        {"qsim", "check-oracle", "--algebra", "zn-add:6", "--seed", "3"},
        {"qsim", "order", "--modulus", "21", "--base", "2", "--qubits", "7", "--shots", "20", "--seed", "3"},
    };
    std::size_t differing = 0, failed = 0;
    for (const auto &cmd : commands) {
        std::ostringstream a, b, err;
        const int ca = wpf_main(cmd, a, err), cb = wpf_main(cmd, b, err);
        if (ca != 0 || cb != 0) ++failed;
        if (a.str() != b.str()) ++differing;
    }
    return {differing == 0 && failed == 0,
            fmt("%zu commands, %zu differing, %zu nonzero exits", commands.size(), differing, failed)};
}

}  // namespace

int main() {
    const std::vector<std::function<Verdict()>> criteria = {
        order_finding_average_game, membership_worst_case_game, reduct_pipeline,  reachability_bound,
        commutation,                alpha_bijection,            oracle_conversions, toy_order_finding,
        min_below_average,          byte_identical_reports,
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Verdict v;
        try {
            v = criteria[i]();
        } catch (const std::exception &e) {
            v = {false, std::string("threw: ") + e.what()};
        }
        failures += !v.pass;
        std::printf("criterion %zu: %s %s\n", i + 1, v.pass ? "PASS" : "FAIL", v.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%s: %d of %zu criteria failed\n", failures ? "FAIL" : "PASS", failures, criteria.size());
    return failures ? 1 : 0;
}
