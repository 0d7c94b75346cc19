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

#ifndef WPF_ATTACKS_HPP_
#define WPF_ATTACKS_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>

#include "wpf/blackbox.hpp"
#include "wpf/qsim.hpp"
#include "wpf/rng.hpp"
#include "wpf/slp.hpp"

namespace wpf {

inline constexpr std::uint64_t kDefaultOracleBudget = 1'000'000;

/// Order finding: given g, some s >= 1 with g^s = 1.
struct OrderOracle {
    enum class Kind { Exact, Epsilon, Qpe };

    Kind kind = Kind::Exact;
    /// Success probability of the Epsilon kind.
    double epsilon = 1.0;
    /// Black-box queries one invocation may spend.
    std::uint64_t budget = kDefaultOracleBudget;
    /// Counting-register width for Qpe; 0 picks 2n+1 capped by max_qubits.
    qsim::QpeOptions qpe{0, 1, 26, qsim::Exec::Serial};

    static OrderOracle exact(std::uint64_t budget = kDefaultOracleBudget);
    static OrderOracle with_epsilon(double eps, std::uint64_t budget = kDefaultOracleBudget);
    static OrderOracle simulated(qsim::QpeOptions opts = {0, 1, 26, qsim::Exec::Serial});

    /// Every returned s satisfies g^s = 1. Exhausting the budget or an
    /// unlucky Epsilon draw yields nullopt.
    std::optional<std::uint64_t> find(BlackBoxAlgebra &bb, const GroupSymbols &syms, Code g, Rng &rng) const;
    std::string to_string() const;
};

/// Constructive membership: an SLP computing h from (g_1, ..., g_i).
struct MembershipOracle {
    enum class Kind { BfsExact, Epsilon };

    Kind kind = Kind::BfsExact;
    double epsilon = 1.0;
    /// Operation applications one invocation may spend.
    std::uint64_t budget = kDefaultOracleBudget;

    static MembershipOracle exact(std::uint64_t budget = kDefaultOracleBudget);
    static MembershipOracle with_epsilon(double eps, std::uint64_t budget = kDefaultOracleBudget);

    /// Every returned program validates over the answered signature with
    /// g.size() inputs and computes h from g.
    std::optional<Slp> find(BlackBoxAlgebra &bb, std::span<const Code> g, Code h, Rng &rng) const;
    std::string to_string() const;
};

struct AttackOutcome {
    std::optional<RelationPair> pair;
    /// Calls made to the order or membership oracle.
    std::uint64_t oracle_queries = 0;
    /// Black-box counter delta over the whole attack.
    std::uint64_t bb_queries = 0;
    /// 1-based index i at which attack_finite stopped.
    std::optional<std::size_t> index;
    /// Order multiple used by attack_infinite_exponent.
    std::optional<std::uint64_t> order;

    bool success() const { return pair.has_value(); }
};

/// Relation (a_1^s, 1) from an order-finding oracle. Sound when the ambient
/// group variety has infinite exponent.
AttackOutcome attack_infinite_exponent(BlackBoxAlgebra &bb, const GroupSymbols &syms, Code g,
                                       const OrderOracle &oracle, Rng &rng);

/// Scans i = 1, 2, ... and returns (u, a_i) for the first i where the oracle
/// writes g_i as a program u in g_1, ..., g_{i-1}. No retries.
AttackOutcome attack_finite(BlackBoxAlgebra &bb, std::span<const Code> g, const MembershipOracle &oracle, Rng &rng);

/// Smallest 1-based j with g_j in the subalgebra generated by
/// g_1, ..., g_{j-1}; ground truth on the decoded algebra.
std::optional<std::size_t> counting_certificate(const FiniteAlgebra &alg, std::span<const Elem> g);
std::optional<std::size_t> counting_certificate(const BlackBoxAlgebra &bb, std::span<const Code> g);

}  // namespace wpf

#endif  // WPF_ATTACKS_HPP_
