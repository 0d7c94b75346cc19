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

#ifndef WPF_GAMES_HPP_
#define WPF_GAMES_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "wpf/attacks.hpp"
#include "wpf/families.hpp"

namespace wpf {

using qsim::Exec;

inline constexpr std::uint64_t kWorstCaseInstanceBudget = 1'000'000;

/// An attack together with its oracle configuration.
///
/// Text form: "inf:exact", "inf:eps=0.5", "inf:qpe", "fin:exact",
/// "fin:eps=0.5", "fail".
struct AdversarySpec {
    enum class Kind { Infinite, Finite, Fail };

    Kind kind = Kind::Fail;
    OrderOracle order;
    MembershipOracle membership;

    static AdversarySpec parse(std::string_view text);
    static AdversarySpec infinite(OrderOracle oracle);
    static AdversarySpec finite(MembershipOracle oracle);
    static AdversarySpec fail() { return {}; }

    std::string to_string() const;
    /// Whether the outcome is a function of the instance alone.
    bool deterministic() const;

    /// Runs the attack on tuple g. The auxiliary tuple r is handed over but
    /// neither attack reads it.
    AttackOutcome run(BlackBoxAlgebra &bb, const GroupSymbols &syms, std::span<const Code> g,
                      std::span<const Code> r, Rng &rng) const;
};

struct GameConfig {
    std::uint64_t k = 1;
    Poly pi = Poly::constant(1);
    Poly tau = Poly::constant(0);
    std::uint64_t trials = 100;
    std::uint64_t master_seed = 0;
    AdversarySpec adversary;
    Exec exec = Exec::Parallel;

    /// Throws InvalidArgument unless trials >= 1 and pi(k) >= 1.
    void validate() const;
};

struct QueryStats {
    std::uint64_t total_bb_queries = 0;
    std::uint64_t max_bb_queries = 0;
    std::uint64_t total_oracle_queries = 0;
};

/// Extra counts reported by end_to_end_theorem_demo.
struct DemoSummary {
    std::string gamma;
    std::string reduct_variety;
    std::string attack;
    /// Successes (accepted by the reduct-variety verifier) that the
    /// full-variety verifier also accepts.
    std::uint64_t full_accepts = 0;
    /// Successes that re-verify on an independently wrapped copy.
    std::uint64_t rewrap_accepts = 0;
};

struct TrialReport {
    std::string mode;  // "average", "worst-case" or "demo"
    std::uint64_t successes = 0;
    std::uint64_t trials = 0;
    double estimate = 0.0;
    double wilson_low = 0.0;
    double wilson_high = 1.0;
    /// Worst-case modes: minimum per-instance success rate.
    std::optional<double> per_instance_min;
    std::uint64_t instances = 0;
    /// Worst-case modes: tuples were sub-sampled.
    bool partial = false;
    std::uint64_t pi = 0;
    std::uint64_t tau = 0;
    /// Adversary outputs the verifier refused.
    std::uint64_t rejected = 0;
    /// Set when the adversary is attack_finite with the exact oracle: stop
    /// indices that differ from counting_certificate.
    std::optional<std::uint64_t> certificate_mismatches;
    QueryStats queries;
    std::optional<DemoSummary> demo;
    double wall_time = 0.0;
};

/// 95% Wilson score interval.
std::pair<double, double> wilson_interval(std::uint64_t successes, std::uint64_t trials, double z = 1.959963984540054);

/// Per trial: d ~ D_k, a freshly seeded encoding of H_d, g ~ H_d^pi(k),
/// r ~ H_d^tau(k), one adversary run, Lambda verification.
TrialReport run_average_game(const Family &f, const GameConfig &cfg);

/// Every (d, g) in D_k x H_d^pi(k) when that set has at most
/// `instance_budget` members, otherwise a seeded uniform sub-sample of that
/// many tuples (flagged partial). Deterministic adversaries run once per
/// instance; randomized ones cfg.trials times.
TrialReport run_worstcase_game(const Family &f, const GameConfig &cfg,
                               std::uint64_t instance_budget = kWorstCaseInstanceBudget);

/// Gamma-reduct pipeline: attack chosen by the reduct variety's exponent
/// (order finding with pi = 1 if infinite, membership with
/// pi = max xi(d) + 1 otherwise), run as a worst-case game, verified with
/// the reduct-variety Lambda and cross-checked against the family variety
/// and a re-wrapped instance. The oracle settings of cfg.adversary are kept
/// when its kind matches the chosen attack.
TrialReport end_to_end_theorem_demo(const Family &f, const GroupSymbols &gamma, const GameConfig &cfg,
                                    std::uint64_t instance_budget = kWorstCaseInstanceBudget);

struct CurvePoint {
    std::uint64_t k = 0;
    TrialReport report;
};

/// run_average_game at each k (cfg.k is overridden).
std::vector<CurvePoint> estimate_negligibility_curve(const Family &f, const GameConfig &cfg,
                                                     std::span<const std::uint64_t> ks);
std::string curve_csv(std::span<const CurvePoint> curve);

}  // namespace wpf

#endif  // WPF_GAMES_HPP_
