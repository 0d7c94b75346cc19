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

#include "wpf/attacks.hpp"

#include <algorithm>
#include <sstream>

namespace wpf {

namespace {

std::string format_eps(double eps) {
    std::ostringstream out;
    out << eps;
    return out.str();
}

void check_epsilon(double eps) {
    if (!(eps >= 0.0 && eps <= 1.0)) throw Error(ErrorKind::InvalidArgument, "epsilon must lie in [0, 1]");
}

std::optional<std::uint64_t> exact_order(BlackBoxAlgebra &bb, const GroupSymbols &syms, Code g,
                                         std::uint64_t budget) {
    const std::size_t mul = bb.signature().index_of(syms.mul);
    const std::uint64_t start = bb.queries();
    const Code one = bb.apply(bb.signature().index_of(syms.one), {});
    Code x = g;
    for (std::uint64_t s = 1;; ++s) {
        if (x == one) return s;
        if (bb.queries() - start >= budget) return std::nullopt;
        const Code args[2] = {x, g};
        x = bb.apply(mul, args);
    }
}

}  // namespace

OrderOracle OrderOracle::exact(std::uint64_t budget) {
    OrderOracle o;
    o.budget = budget;
    return o;
}

OrderOracle OrderOracle::with_epsilon(double eps, std::uint64_t budget) {
    check_epsilon(eps);
    OrderOracle o;
    o.kind = Kind::Epsilon;
    o.epsilon = eps;
    o.budget = budget;
    return o;
}

OrderOracle OrderOracle::simulated(qsim::QpeOptions opts) {
    OrderOracle o;
    o.kind = Kind::Qpe;
    o.qpe = opts;
    return o;
}

std::optional<std::uint64_t> OrderOracle::find(BlackBoxAlgebra &bb, const GroupSymbols &syms, Code g,
                                               Rng &rng) const {
    switch (kind) {
        case Kind::Exact:
            return exact_order(bb, syms, g, budget);
        case Kind::Epsilon:
            if (!rng.bernoulli(epsilon)) return std::nullopt;
            return exact_order(bb, syms, g, budget);
        case Kind::Qpe: {
            qsim::QpeOptions opts = qpe;
            const unsigned n = bb.width();
            if (opts.counting_qubits == 0) {
                const unsigned room = opts.max_qubits > 2 * n ? opts.max_qubits - 2 * n : 0;
                opts.counting_qubits = std::min(2 * n + 1, room);
            }
            if (opts.counting_qubits == 0) return std::nullopt;
            try {
                return qsim::order_find_qpe(bb, syms, g, opts, rng).order;
            } catch (const Error &e) {
                if (e.kind() == ErrorKind::BudgetExceeded) return std::nullopt;
                throw;
            }
        }
    }
    return std::nullopt;
}

std::string OrderOracle::to_string() const {
    switch (kind) {
        case Kind::Exact:
            return "exact";
        case Kind::Epsilon:
            return "eps=" + format_eps(epsilon);
        case Kind::Qpe:
            return "qpe";
    }
    return {};
}

MembershipOracle MembershipOracle::exact(std::uint64_t budget) {
    MembershipOracle o;
    o.budget = budget;
    return o;
}

MembershipOracle MembershipOracle::with_epsilon(double eps, std::uint64_t budget) {
    check_epsilon(eps);
    MembershipOracle o;
    o.kind = Kind::Epsilon;
    o.epsilon = eps;
    o.budget = budget;
    return o;
}

std::optional<Slp> MembershipOracle::find(BlackBoxAlgebra &bb, std::span<const Code> g, Code h, Rng &rng) const {
    if (kind == Kind::Epsilon && !rng.bernoulli(epsilon)) return std::nullopt;
    const BfsResult r = shortest_slp_bfs(bb, g, h, budget);
    if (r.status != BfsStatus::Found) return std::nullopt;
    return r.slp;
}

std::string MembershipOracle::to_string() const {
    return kind == Kind::BfsExact ? "exact" : "eps=" + format_eps(epsilon);
}

AttackOutcome attack_infinite_exponent(BlackBoxAlgebra &bb, const GroupSymbols &syms, Code g,
                                       const OrderOracle &oracle, Rng &rng) {
    AttackOutcome out;
    const std::uint64_t before = bb.queries();
    out.oracle_queries = 1;
    out.order = oracle.find(bb, syms, g, rng);
    if (out.order) out.pair = RelationPair{power_slp(*out.order, syms), identity_slp(syms)};
    out.bb_queries = bb.queries() - before;
    return out;
}

AttackOutcome attack_finite(BlackBoxAlgebra &bb, std::span<const Code> g, const MembershipOracle &oracle, Rng &rng) {
    AttackOutcome out;
    const std::uint64_t before = bb.queries();
    for (std::size_t i = 1; i <= g.size(); ++i) {
        ++out.oracle_queries;
        if (auto u = oracle.find(bb, g.first(i - 1), g[i - 1], rng)) {
            Slp target;
            target.instrs.push_back(Instr::input_ref(static_cast<std::uint32_t>(i)));
            out.pair = RelationPair{std::move(*u), std::move(target)};
            out.index = i;
            break;
        }
    }
    out.bb_queries = bb.queries() - before;
    return out;
}

std::optional<std::size_t> counting_certificate(const FiniteAlgebra &alg, std::span<const Elem> g) {
    for (std::size_t j = 1; j <= g.size(); ++j) {
        const std::vector<Elem> span = subalgebra_closure(alg, g.first(j - 1));
        if (std::binary_search(span.begin(), span.end(), g[j - 1])) return j;
    }
    return std::nullopt;
}

std::optional<std::size_t> counting_certificate(const BlackBoxAlgebra &bb, std::span<const Code> g) {
    std::vector<Elem> decoded;
    for (Code c : g) decoded.push_back(bb.decode(c));
    // Closure uses the answered symbols only, matching what the attack sees.
    std::vector<std::string> names;
    for (const Symbol &s : bb.signature().symbols()) names.push_back(s.name);
    return counting_certificate(bb.source().reduct(names), decoded);
}

}  // namespace wpf
