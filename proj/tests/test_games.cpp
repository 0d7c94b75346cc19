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

#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "oracles.hpp"
#include "wpf/algebras.hpp"
#include "wpf/games.hpp"
#include "wpf/report.hpp"

using namespace wpf;

namespace {

GameConfig config(std::string_view adversary, std::uint64_t trials = 200, std::uint64_t seed = 1) {
    GameConfig cfg;
    cfg.adversary = AdversarySpec::parse(adversary);
    cfg.trials = trials;
    cfg.master_seed = seed;
    return cfg;
}

}  // namespace

TEST(Poly, ParseAndEvaluate) {
    EXPECT_EQ(Poly::parse("k+1")(3), 4u);
    EXPECT_EQ(Poly::parse("2k^2+3")(5), 53u);
    EXPECT_EQ(Poly::parse("5")(100), 5u);
    EXPECT_EQ(Poly::parse("k^3")(2), 8u);
    EXPECT_EQ(Poly::parse("k+1"), Poly({1, 1}));
    EXPECT_EQ(Poly::parse(Poly::parse("3k^2+k+7").to_string()), Poly::parse("3k^2+k+7"));
    EXPECT_THROW(Poly::parse("k-1"), Error);
    EXPECT_THROW(Poly::parse(""), Error);
    EXPECT_THROW(Poly::parse("k^99")(1u << 20), Error);
}

TEST(Family, ParseAndLevels) {
    const Family z = Family::parse("zn-star", "15,21,33");
    EXPECT_EQ(z.indices(), (std::vector<std::string>{"15", "21", "33"}));
    EXPECT_EQ(z.level(7), z.indices());
    EXPECT_EQ(z.algebra_at("21")->size(), oracle::units(21).size());
    EXPECT_EQ(z.xi("21"), 4u);
    EXPECT_EQ(z.source_ref("15"), "zn-star:15");

    const Family r = Family::parse("ring-zn", "6..30");
    EXPECT_EQ(r.indices().size(), 25u);
    EXPECT_EQ(r.group_symbols(), GroupSymbols::additive());
    EXPECT_EQ(r.reduct_variety(GroupSymbols::additive()).kind(), VarietyKind::AbelianGroups);
    EXPECT_THROW(r.reduct_variety(GroupSymbols::multiplicative()), Error);

    const Family e = Family::parse("elem-abelian", "p=2,k=2..4");
    EXPECT_EQ(e.level(1), (std::vector<std::string>{"2^2"}));
    EXPECT_EQ(e.level(3), (std::vector<std::string>{"2^3"}));
    EXPECT_EQ(e.level(9), (std::vector<std::string>{"2^4"}));
    EXPECT_EQ(e.algebra_at("2^3")->size(), 8u);
    EXPECT_EQ(e.variety().kind(), VarietyKind::ElementaryAbelian);

    const Family d = Family::parse("direct-power", "base=zn-star:15,e=1..3");
    EXPECT_EQ(d.source_ref("15^2"), "direct-power:zn-star:15^2");
    EXPECT_EQ(d.algebra_at("15^2")->size(), 64u);
    EXPECT_EQ(algebra_from_source("direct-power:zn-star:15^2")->size(), 64u);
    EXPECT_EQ(algebra_from_source("elem-abelian:3^2")->size(), 9u);

    EXPECT_TRUE(Family::parse("zn-star", "2").variety().is_trivial());
    EXPECT_THROW(Family::parse("zn-foo", "3"), Error);
    EXPECT_THROW(Family::parse("zn-add", ""), Error);
    EXPECT_THROW(Family::parse("elem-abelian", "p=4,k=1..2"), Error);
    EXPECT_THROW(Family::parse("elem-abelian", "p=2"), Error);
}

TEST(Family, GammaParsing) {
    const Family r = Family::parse("ring-zn", "6");
    EXPECT_EQ(parse_gamma("additive", r), GroupSymbols::additive());
    EXPECT_EQ(parse_gamma("full", r), GroupSymbols::additive());
    const Family z = Family::parse("zn-star", "15");
    EXPECT_EQ(parse_gamma("full", z), GroupSymbols::multiplicative());
    EXPECT_THROW(parse_gamma("sideways", z), Error);
}

TEST(Family, LengthDiscipline) {
    for (const Family &f : {Family::parse("zn-add", "2..200"), Family::parse("zn-star", "15,21,33,35,77,91"),
                            Family::parse("ring-zn", "6..30"), Family::parse("elem-abelian", "p=3,k=1..4"),
                            Family::parse("direct-power", "base=zn-add:6,e=1..4")}) {
        for (std::uint64_t k = 1; k <= 6; ++k) {
            EXPECT_NO_THROW(f.check_length_discipline(k)) << f.name();
            for (const std::string &d : f.level(k)) {
                EXPECT_LE(d.size(), f.theta(k));
                EXPECT_LE(f.xi(d), f.eta()(d.size()));
                EXPECT_GE(std::uint64_t{1} << f.xi(d), f.algebra_at(d)->size());
            }
        }
    }
}

TEST(Samplers, IndexDistributionIsUniform) {
    const Family f = Family::parse("zn-add", "5..24");
    Rng rng(12);
    std::map<std::string, std::uint64_t> seen;
    for (int i = 0; i < 10000; ++i) ++seen[f.sample_index(1, rng)];
    ASSERT_EQ(seen.size(), 20u);
    std::vector<std::uint64_t> counts;
    for (const auto &[d, c] : seen) counts.push_back(c);
    EXPECT_LT(oracle::chi_square_uniform(counts), oracle::chi_square_critical(19));
}

TEST(Samplers, ElementDistributionIsUniform) {
    const FiniteAlgebra alg = zn_star(91);
    Rng rng(13);
    std::vector<std::uint64_t> counts(alg.size());
    for (int i = 0; i < 10000; ++i) ++counts[Family::sample_element(alg, rng)];
    EXPECT_LT(oracle::chi_square_uniform(counts), oracle::chi_square_critical(counts.size() - 1.0));
}

TEST(Adversary, ParseAndPrint) {
    for (std::string s : {"inf:exact", "inf:eps=0.5", "inf:qpe", "fin:exact", "fin:eps=0.5", "fail"}) {
        EXPECT_EQ(AdversarySpec::parse(s).to_string(), s);
    }
    EXPECT_TRUE(AdversarySpec::parse("inf:exact").deterministic());
    EXPECT_TRUE(AdversarySpec::parse("fin:exact").deterministic());
    EXPECT_FALSE(AdversarySpec::parse("inf:eps=0.5").deterministic());
    EXPECT_THROW(AdversarySpec::parse("mid:exact"), Error);
}

TEST(GameConfig, Validation) {
    GameConfig cfg;
    cfg.trials = 0;
    EXPECT_THROW(cfg.validate(), Error);
    cfg.trials = 1;
    cfg.pi = Poly::constant(0);
    EXPECT_THROW(cfg.validate(), Error);
}

TEST(AverageGame, Examples) {
    const Family f = Family::parse("zn-star", "15,21,33,35");
    const TrialReport all = run_average_game(f, config("inf:exact"));
    EXPECT_EQ(all.successes, 200u);
    EXPECT_EQ(all.estimate, 1.0);
    EXPECT_EQ(all.rejected, 0u);
    EXPECT_EQ(all.mode, "average");

    const TrialReport none = run_average_game(f, config("fail"));
    EXPECT_EQ(none.successes, 0u);
    EXPECT_EQ(none.estimate, 0.0);

    const TrialReport half = run_average_game(f, config("inf:eps=0.5", 2000));
    EXPECT_GE(half.estimate, 0.45);
    EXPECT_LE(half.estimate, 0.55);
    EXPECT_EQ(half.rejected, 0u);
    EXPECT_LE(half.wilson_low, half.estimate);
    EXPECT_GE(half.wilson_high, half.estimate);
}

TEST(AverageGame, FiniteAttackAndTau) {
    const Family f = Family::parse("elem-abelian", "p=2,k=1..5");
    GameConfig cfg = config("fin:exact", 300);
    cfg.k = 3;
    cfg.pi = Poly::parse("k+1");
    cfg.tau = Poly::parse("k");
    const TrialReport rep = run_average_game(f, cfg);
    EXPECT_EQ(rep.estimate, 1.0);
    EXPECT_EQ(rep.pi, 4u);
    EXPECT_EQ(rep.tau, 3u);
    EXPECT_EQ(rep.certificate_mismatches, 0u);
}

TEST(AverageGame, QueryStats) {
    const Family f = Family::parse("zn-add", "17");
    const TrialReport rep = run_average_game(f, config("inf:exact", 50));
    EXPECT_GT(rep.queries.total_bb_queries, 0u);
    EXPECT_LE(rep.queries.max_bb_queries * 50, rep.queries.total_bb_queries * 50);
    EXPECT_GE(rep.queries.max_bb_queries * 50, rep.queries.total_bb_queries);
    EXPECT_EQ(rep.queries.total_oracle_queries, 50u);
}

TEST(WorstCaseGame, Examples) {
    GameConfig cfg = config("fin:exact");
    cfg.k = 3;
    cfg.pi = Poly::constant(4);
    const TrialReport full = run_worstcase_game(Family::parse("elem-abelian", "p=2,k=3"), cfg);
    EXPECT_EQ(full.per_instance_min, 1.0);
    EXPECT_EQ(full.instances, 4096u);
    EXPECT_FALSE(full.partial);
    EXPECT_EQ(full.certificate_mismatches, 0u);

    cfg.k = 2;
    cfg.pi = Poly::constant(2);
    const TrialReport weak = run_worstcase_game(Family::parse("elem-abelian", "p=2,k=2"), cfg);
    EXPECT_EQ(weak.per_instance_min, 0.0);
    EXPECT_EQ(weak.instances, 16u);
    // Ordered pairs of independent vectors in F_2^2.
    EXPECT_EQ(weak.successes, 16u - 6u);
}

TEST(WorstCaseGame, SubSamplingIsFlagged) {
    GameConfig cfg = config("fin:exact");
    cfg.k = 3;
    cfg.pi = Poly::constant(4);
    const TrialReport rep = run_worstcase_game(Family::parse("elem-abelian", "p=2,k=3"), cfg, 500);
    EXPECT_TRUE(rep.partial);
    EXPECT_EQ(rep.instances, 500u);
    EXPECT_EQ(rep.per_instance_min, 1.0);
}

TEST(WorstCaseGame, RandomizedAdversaryRepeats) {
    GameConfig cfg = config("inf:eps=0.5", 40);
    const TrialReport rep = run_worstcase_game(Family::parse("zn-add", "5"), cfg);
    EXPECT_EQ(rep.instances, 5u);
    EXPECT_EQ(rep.trials, 200u);
    ASSERT_TRUE(rep.per_instance_min.has_value());
    EXPECT_LE(*rep.per_instance_min, rep.estimate);
}

TEST(WorstCaseGame, MinimumNeverExceedsAverageForDeterministicAdversaries) {
    struct Case {
        const char *family, *params, *adversary;
        std::uint64_t k, pi;
    };
    for (const Case &c : std::vector<Case>{{"elem-abelian", "p=2,k=2", "fin:exact", 2, 2},
                                           {"elem-abelian", "p=2,k=2", "fin:exact", 2, 3},
                                           {"elem-abelian", "p=3,k=2", "fin:exact", 2, 2},
                                           {"zn-add", "4..9", "fin:exact", 1, 1},
                                           {"zn-star", "15,21", "inf:exact", 1, 2},
                                           {"zn-add", "6", "fail", 1, 2}}) {
        GameConfig cfg = config(c.adversary);
        cfg.k = c.k;
        cfg.pi = Poly::constant(c.pi);
        const TrialReport rep = run_worstcase_game(Family::parse(c.family, c.params), cfg);
        ASSERT_TRUE(rep.per_instance_min.has_value());
        EXPECT_EQ(rep.trials, rep.instances);
        // Exact: min over 0/1 outcomes is 0 unless every instance succeeds.
        EXPECT_EQ(*rep.per_instance_min, rep.successes == rep.trials ? 1.0 : 0.0);
        EXPECT_LE(*rep.per_instance_min, rep.estimate) << c.family << " " << c.adversary;
    }
}

TEST(Demo, Examples) {
    GameConfig cfg = config("fail");
    const TrialReport ring = end_to_end_theorem_demo(Family::parse("ring-zn", "6..30"), GroupSymbols::additive(), cfg);
    EXPECT_EQ(ring.per_instance_min, 1.0);
    EXPECT_EQ(ring.pi, 1u);
    ASSERT_TRUE(ring.demo.has_value());
    EXPECT_EQ(ring.demo->full_accepts, ring.successes);
    EXPECT_EQ(ring.demo->rewrap_accepts, ring.successes);
    EXPECT_EQ(ring.successes, ring.trials);
    EXPECT_EQ(ring.mode, "demo");

    const Family e = Family::parse("elem-abelian", "p=3,k=1..4");
    for (std::uint64_t k : {1u, 2u}) {
        cfg.k = k;
        const TrialReport fin = end_to_end_theorem_demo(e, parse_gamma("full", e), cfg);
        EXPECT_EQ(fin.pi, e.xi(e.level(k)[0]) + 1);
        EXPECT_EQ(fin.per_instance_min, 1.0);
        EXPECT_EQ(fin.demo->rewrap_accepts, fin.successes);
        EXPECT_EQ(fin.certificate_mismatches, 0u);
    }

    const Family one = Family::parse("zn-star", "2");
    try {
        end_to_end_theorem_demo(one, GroupSymbols::multiplicative(), cfg);
        FAIL() << "expected TrivialVariety";
    } catch (const Error &err) {
        EXPECT_EQ(err.kind(), ErrorKind::TrivialVariety);
    }
    EXPECT_THROW(end_to_end_theorem_demo(Family::parse("ring-zn", "6"), GroupSymbols::multiplicative(), cfg), Error);
}

TEST(Curve, FlatCurves) {
    const Family f = Family::parse("zn-star", "15,21,33,35");
    const std::vector<std::uint64_t> ks = {1, 2, 3, 4};
    for (const auto &[adv, want] : {std::pair{"inf:exact", 1.0}, {"fail", 0.0}}) {
        const auto curve = estimate_negligibility_curve(f, config(adv, 100), ks);
        ASSERT_EQ(curve.size(), ks.size());
        for (std::size_t i = 0; i < ks.size(); ++i) {
            EXPECT_EQ(curve[i].k, ks[i]);
            EXPECT_EQ(curve[i].report.estimate, want);
        }
    }
    const auto eps = estimate_negligibility_curve(f, config("inf:eps=0.3", 1000), ks);
    for (const CurvePoint &p : eps) EXPECT_NEAR(p.report.estimate, 0.3, 3 * std::sqrt(0.3 * 0.7 / 1000));

    const auto flat = estimate_negligibility_curve(f, config("fail", 10), std::vector<std::uint64_t>{1, 2});
    EXPECT_EQ(curve_csv(flat),
              "k,successes,trials,estimate,wilson_low,wilson_high\n"
              "1,0,10,0.000000,0.000000,0.277533\n"
              "2,0,10,0.000000,0.000000,0.277533\n");
}

TEST(Wilson, MatchesClosedForm) {
    for (auto [s, n] : {std::pair{0u, 10u}, {10u, 10u}, {7u, 20u}, {500u, 1000u}, {1u, 1u}}) {
        const auto [lo, hi] = wilson_interval(s, n);
        const auto [wlo, whi] = oracle::wilson(s, n, 1.959963984540054);
        EXPECT_NEAR(lo, wlo, 1e-12);
        EXPECT_NEAR(hi, whi, 1e-12);
        EXPECT_GE(lo, 0.0);
        EXPECT_LE(hi, 1.0);
    }
}

TEST(Reproducibility, SameSeedSameReport) {
    const Family f = Family::parse("zn-star", "15,21,33,35,77,91");
    GameConfig cfg = config("inf:eps=0.5", 300, 42);
    const Json a = to_json(run_average_game(f, cfg));
    const Json b = to_json(run_average_game(f, cfg));
    EXPECT_EQ(a.dump(), b.dump());
    cfg.exec = Exec::Serial;
    EXPECT_EQ(to_json(run_average_game(f, cfg)).dump(), a.dump());
    cfg.master_seed = 43;
    EXPECT_NE(to_json(run_average_game(f, cfg)).dump(), a.dump());

    GameConfig w = config("fin:eps=0.5", 5, 7);
    w.pi = Poly::constant(3);
    w.k = 2;
    const Family e = Family::parse("elem-abelian", "p=2,k=2");
    const std::string par = to_json(run_worstcase_game(e, w)).dump();
    w.exec = Exec::Serial;
    EXPECT_EQ(to_json(run_worstcase_game(e, w)).dump(), par);
}

TEST(Report, Schema) {
    const Family f = Family::parse("zn-star", "15");
    GameConfig cfg = config("inf:exact", 10);
    const TrialReport rep = run_average_game(f, cfg);
    const Json j = to_json(rep);
    for (const char *key : {"mode", "successes", "trials", "estimate", "wilson_interval", "query_stats"}) {
        EXPECT_TRUE(j.contains(key)) << key;
    }
    EXPECT_FALSE(j.contains("wall_time"));
    EXPECT_TRUE(to_json(rep, true).contains("wall_time"));

    const Json env = report_envelope("game avg", to_json(cfg), j);
    EXPECT_EQ(env["schema_version"], kReportSchemaVersion);
    EXPECT_EQ(env["tool_version"], kToolVersion);
    EXPECT_EQ(env["command"], "game avg");
    std::vector<std::string> keys;
    for (const auto &[k, v] : env.items()) keys.push_back(k);
    EXPECT_EQ(keys, (std::vector<std::string>{"schema_version", "tool", "tool_version", "command", "config", "results"}));
}
