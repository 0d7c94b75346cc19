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

#include "wpf/games.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>

namespace wpf {

namespace {

double parse_epsilon(std::string_view text) {
    try {
        std::size_t used = 0;
        const double eps = std::stod(std::string(text), &used);
        if (used == text.size()) return eps;
    } catch (const std::exception &) {
    }
    throw Error(ErrorKind::Parse, "bad epsilon '" + std::string(text) + "'");
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

/// Lambda verification; malformed programs count as rejections.
template <class A>
bool accepted(const VarietySpec &v, A &alg, std::span<const typename A::Element> g, const RelationPair &pair) {
    try {
        return lambda_contains(v, g.size(), alg, g, pair);
    } catch (const Error &) {
        return false;
    }
}

struct Tally {
    std::uint64_t successes = 0;
    std::uint64_t attempts = 0;
    std::uint64_t rejected = 0;
    std::uint64_t min_instance_successes = std::numeric_limits<std::uint64_t>::max();
    std::uint64_t instances = 0;
    std::uint64_t cert_mismatches = 0;
    std::uint64_t full_accepts = 0;
    std::uint64_t rewrap_accepts = 0;
    QueryStats queries;

    void record_queries(const AttackOutcome &out) {
        queries.total_bb_queries += out.bb_queries;
        queries.max_bb_queries = std::max(queries.max_bb_queries, out.bb_queries);
        queries.total_oracle_queries += out.oracle_queries;
    }
    void merge(const Tally &o) {
        successes += o.successes;
        attempts += o.attempts;
        rejected += o.rejected;
        min_instance_successes = std::min(min_instance_successes, o.min_instance_successes);
        instances += o.instances;
        cert_mismatches += o.cert_mismatches;
        full_accepts += o.full_accepts;
        rewrap_accepts += o.rewrap_accepts;
        queries.total_bb_queries += o.queries.total_bb_queries;
        queries.max_bb_queries = std::max(queries.max_bb_queries, o.queries.max_bb_queries);
        queries.total_oracle_queries += o.queries.total_oracle_queries;
    }
};

void fill_rates(TrialReport &rep, const Tally &t) {
    rep.successes = t.successes;
    rep.trials = t.attempts;
    rep.estimate = t.attempts ? static_cast<double>(t.successes) / static_cast<double>(t.attempts) : 0.0;
    std::tie(rep.wilson_low, rep.wilson_high) = wilson_interval(t.successes, t.attempts);
    rep.rejected = t.rejected;
    rep.queries = t.queries;
}

/// Calls body(state, i) for i in [0, count). Each OpenMP thread owns one
/// state from make_state(); finish(state) runs once per state, serialized.
template <class MakeState, class Body, class Finish>
void for_each_index(std::uint64_t count, Exec exec, MakeState make_state, Body body, Finish finish) {
    if (exec == Exec::Serial) {
        auto state = make_state();
        for (std::uint64_t i = 0; i < count; ++i) body(state, i);
        finish(state);
        return;
    }
    std::exception_ptr error;
#pragma omp parallel
    {
        try {
            auto state = make_state();
#pragma omp for schedule(dynamic, 64)
            for (std::int64_t i = 0; i < static_cast<std::int64_t>(count); ++i) {
                try {
                    body(state, static_cast<std::uint64_t>(i));
                } catch (...) {
#pragma omp critical(wpf_games_error)
                    if (!error) error = std::current_exception();
                }
            }
#pragma omp critical(wpf_games_merge)
            finish(state);
        } catch (...) {
#pragma omp critical(wpf_games_error)
            if (!error) error = std::current_exception();
        }
    }
    if (error) std::rethrow_exception(error);
}

std::uint64_t saturating_power(std::uint64_t base, std::uint64_t e) {
    std::uint64_t out = 1;
    for (std::uint64_t i = 0; i < e; ++i) {
        if (__builtin_mul_overflow(out, base, &out)) return std::numeric_limits<std::uint64_t>::max();
    }
    return out;
}

// Seed streams derived from a level seed.
constexpr std::uint64_t kRewrapStream = 1;
constexpr std::uint64_t kInstanceStream = 2;
constexpr std::uint64_t kTupleStream = 3;

/// One index d of D_k prepared for enumeration.
struct Level {
    std::string index;
    std::shared_ptr<const FiniteAlgebra> alg;       // H_d
    std::shared_ptr<const FiniteAlgebra> cert_alg;  // H_d restricted to the answered symbols
    std::uint64_t seed = 0;
    std::optional<BlackBoxAlgebra> bb;      // what the adversary sees
    std::optional<BlackBoxAlgebra> full;    // demo: unrestricted instance
    std::optional<BlackBoxAlgebra> rewrap;  // demo: independent re-encoding
    std::uint64_t count = 0;
    bool sampled = false;
};

struct Plan {
    AdversarySpec adversary;
    GroupSymbols syms;
    VarietySpec verify;
    std::optional<VarietySpec> full_variety;  // demo cross-check
    std::uint64_t m = 1;
    std::uint64_t repeats = 1;
    bool check_certificate = false;
};

struct Worker {
    std::optional<BlackBoxAlgebra> bb, full, rewrap;
    std::vector<Elem> elems;
    std::vector<Code> g, g_rewrap;
    Tally tally;
};

Tally enumerate_level(const Level &lvl, const Plan &plan, Exec exec) {
    Tally total;
    const std::uint64_t h = lvl.alg->size();
    auto make_state = [&] {
        Worker w;
        w.bb = lvl.bb;
        w.full = lvl.full;
        w.rewrap = lvl.rewrap;
        w.elems.resize(plan.m);
        w.g.resize(plan.m);
        w.g_rewrap.resize(plan.m);
        return w;
    };
    auto body = [&](Worker &w, std::uint64_t id) {
        if (lvl.sampled) {
            Rng pick(mix_seed(mix_seed(lvl.seed, kTupleStream), id));
            for (std::uint64_t j = 0; j < plan.m; ++j) w.elems[j] = static_cast<Elem>(pick.below(h));
        } else {
            std::uint64_t rest = id;
            for (std::uint64_t j = 0; j < plan.m; ++j) {
                w.elems[j] = static_cast<Elem>(rest % h);
                rest /= h;
            }
        }
        for (std::uint64_t j = 0; j < plan.m; ++j) w.g[j] = w.bb->encode(w.elems[j]);
        std::optional<std::optional<std::size_t>> certificate;
        if (plan.check_certificate) certificate = counting_certificate(*lvl.cert_alg, w.elems);

        const std::uint64_t inst_seed = mix_seed(mix_seed(lvl.seed, kInstanceStream), id);
        std::uint64_t wins = 0;
        for (std::uint64_t rep = 0; rep < plan.repeats; ++rep) {
            Rng rng(mix_seed(inst_seed, rep));
            const AttackOutcome out = plan.adversary.run(*w.bb, plan.syms, w.g, {}, rng);
            w.tally.record_queries(out);
            ++w.tally.attempts;
            if (certificate && out.index != *certificate) ++w.tally.cert_mismatches;
            if (!out.pair) continue;
            if (!accepted(plan.verify, *w.bb, std::span<const Code>(w.g), *out.pair)) {
                ++w.tally.rejected;
                continue;
            }
            ++wins;
            if (w.full && accepted(*plan.full_variety, *w.full, std::span<const Code>(w.g), *out.pair)) {
                ++w.tally.full_accepts;
            }
            if (w.rewrap) {
                for (std::uint64_t j = 0; j < plan.m; ++j) w.g_rewrap[j] = w.rewrap->encode(w.elems[j]);
                if (accepted(plan.verify, *w.rewrap, std::span<const Code>(w.g_rewrap), *out.pair)) {
                    ++w.tally.rewrap_accepts;
                }
            }
        }
        w.tally.successes += wins;
        w.tally.min_instance_successes = std::min(w.tally.min_instance_successes, wins);
        ++w.tally.instances;
    };
    auto finish = [&](Worker &w) { total.merge(w.tally); };
    for_each_index(lvl.count, exec, make_state, body, finish);
    return total;
}

/// Sizes every level and decides between full enumeration and sampling.
bool plan_counts(std::vector<Level> &levels, std::uint64_t m, std::uint64_t budget) {
    if (budget == 0) throw Error(ErrorKind::InvalidArgument, "instance budget must be positive");
    std::uint64_t total = 0;
    for (Level &l : levels) {
        l.count = saturating_power(l.alg->size(), m);
        if (__builtin_add_overflow(total, l.count, &total)) total = std::numeric_limits<std::uint64_t>::max();
    }
    if (total <= budget) return false;
    const std::uint64_t quota = std::max<std::uint64_t>(1, budget / levels.size());
    for (Level &l : levels) {
        if (l.count > quota) {
            l.count = quota;
            l.sampled = true;
        }
    }
    return true;
}

TrialReport run_levels(std::vector<Level> &levels, const Plan &plan, Exec exec, std::uint64_t budget,
                       std::string mode) {
    TrialReport rep;
    rep.mode = std::move(mode);
    rep.pi = plan.m;
    rep.partial = plan_counts(levels, plan.m, budget);
    Tally total;
    for (const Level &lvl : levels) total.merge(enumerate_level(lvl, plan, exec));
    fill_rates(rep, total);
    rep.instances = total.instances;
    if (total.instances) {
        rep.per_instance_min =
            static_cast<double>(total.min_instance_successes) / static_cast<double>(plan.repeats);
    }
    if (plan.check_certificate) rep.certificate_mismatches = total.cert_mismatches;
    if (plan.full_variety) {
        rep.demo = DemoSummary{};
        rep.demo->full_accepts = total.full_accepts;
        rep.demo->rewrap_accepts = total.rewrap_accepts;
    }
    return rep;
}

bool certificate_applies(const AdversarySpec &a) {
    return a.kind == AdversarySpec::Kind::Finite && a.membership.kind == MembershipOracle::Kind::BfsExact;
}

std::string source_ref(const Family &f, const std::string &d) { return f.source_ref(d); }

}  // namespace

AdversarySpec AdversarySpec::infinite(OrderOracle oracle) {
    AdversarySpec a;
    a.kind = Kind::Infinite;
    a.order = std::move(oracle);
    return a;
}

AdversarySpec AdversarySpec::finite(MembershipOracle oracle) {
    AdversarySpec a;
    a.kind = Kind::Finite;
    a.membership = oracle;
    return a;
}

AdversarySpec AdversarySpec::parse(std::string_view text) {
    if (text == "fail") return fail();
    const std::size_t colon = text.find(':');
    if (colon == std::string_view::npos) throw Error(ErrorKind::Parse, "adversary must be inf:<oracle>, fin:<oracle> or fail");
    const std::string_view attack = text.substr(0, colon);
    const std::string_view oracle = text.substr(colon + 1);
    const bool eps = oracle.starts_with("eps=");
    if (attack == "inf") {
        if (oracle == "exact") return infinite(OrderOracle::exact());
        if (oracle == "qpe") return infinite(OrderOracle::simulated());
        if (eps) return infinite(OrderOracle::with_epsilon(parse_epsilon(oracle.substr(4))));
    } else if (attack == "fin") {
        if (oracle == "exact") return finite(MembershipOracle::exact());
        if (eps) return finite(MembershipOracle::with_epsilon(parse_epsilon(oracle.substr(4))));
    }
    throw Error(ErrorKind::Parse, "unknown adversary '" + std::string(text) + "'");
}

std::string AdversarySpec::to_string() const {
    switch (kind) {
        case Kind::Infinite:
            return "inf:" + order.to_string();
        case Kind::Finite:
            return "fin:" + membership.to_string();
        case Kind::Fail:
            return "fail";
    }
    return {};
}

bool AdversarySpec::deterministic() const {
    switch (kind) {
        case Kind::Infinite:
            return order.kind == OrderOracle::Kind::Exact;
        case Kind::Finite:
            return membership.kind == MembershipOracle::Kind::BfsExact;
        case Kind::Fail:
            return true;
    }
    return false;
}

AttackOutcome AdversarySpec::run(BlackBoxAlgebra &bb, const GroupSymbols &syms, std::span<const Code> g,
                                 std::span<const Code>, Rng &rng) const {
    switch (kind) {
        case Kind::Infinite:
            if (g.empty()) return {};
            return attack_infinite_exponent(bb, syms, g[0], order, rng);
        case Kind::Finite:
            return attack_finite(bb, g, membership, rng);
        case Kind::Fail:
            return {};
    }
    return {};
}

void GameConfig::validate() const {
    if (trials < 1) throw Error(ErrorKind::InvalidArgument, "trials must be at least 1");
    if (pi(k) < 1) throw Error(ErrorKind::InvalidArgument, "pi(k) must be at least 1");
}

std::pair<double, double> wilson_interval(std::uint64_t successes, std::uint64_t trials, double z) {
    if (trials == 0) return {0.0, 1.0};
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double centre = (p + z2 / (2 * n)) / (1 + z2 / n);
    const double half = z * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n)) / (1 + z2 / n);
    return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

TrialReport run_average_game(const Family &f, const GameConfig &cfg) {
    cfg.validate();
    f.check_length_discipline(cfg.k);
    const auto start = std::chrono::steady_clock::now();
    const std::vector<std::string> dk = f.level(cfg.k);
    std::vector<std::shared_ptr<const FiniteAlgebra>> algs;
    std::vector<unsigned> widths;
    for (const std::string &d : dk) {
        algs.push_back(f.algebra_at(d));
        widths.push_back(f.xi(d));
        if (algs.back()->size() == 0) throw Error(ErrorKind::InvalidArgument, "games need nonempty carriers");
    }
    const std::uint64_t m = cfg.pi(cfg.k);
    const std::uint64_t t = cfg.tau(cfg.k);

    struct Outcome {
        bool success = false;
        bool rejected = false;
        bool cert_mismatch = false;
        AttackOutcome attack;
    };
    const bool check_certificate = certificate_applies(cfg.adversary);
    std::vector<Outcome> outcomes(cfg.trials);
    auto body = [&](int &, std::uint64_t trial) {
        Rng rng(mix_seed(cfg.master_seed, trial));
        const std::string d = f.sample_index(cfg.k, rng);
        const std::size_t di = static_cast<std::size_t>(std::find(dk.begin(), dk.end(), d) - dk.begin());
        BlackBoxAlgebra bb = wrap(algs[di], widths[di], rng.next(), Strictness::Strict, source_ref(f, d));
        std::vector<Elem> elems(m);
        std::vector<Code> g(m), r(t);
        for (std::uint64_t j = 0; j < m; ++j) g[j] = bb.encode(elems[j] = Family::sample_element(*algs[di], rng));
        for (Code &c : r) c = bb.encode(Family::sample_element(*algs[di], rng));
        Outcome &o = outcomes[trial];
        o.attack = cfg.adversary.run(bb, f.group_symbols(), g, r, rng);
        if (check_certificate) o.cert_mismatch = o.attack.index != counting_certificate(*algs[di], elems);
        if (o.attack.pair) {
            o.success = accepted(f.variety(), bb, std::span<const Code>(g), *o.attack.pair);
            o.rejected = !o.success;
        }
    };
    for_each_index(cfg.trials, cfg.exec, [] { return 0; }, body, [](int &) {});

    Tally total;
    for (const Outcome &o : outcomes) {
        ++total.attempts;
        total.successes += o.success;
        total.rejected += o.rejected;
        total.cert_mismatches += o.cert_mismatch;
        total.record_queries(o.attack);
    }
    TrialReport rep;
    rep.mode = "average";
    rep.pi = m;
    rep.tau = t;
    fill_rates(rep, total);
    rep.instances = cfg.trials;
    if (check_certificate) rep.certificate_mismatches = total.cert_mismatches;
    rep.wall_time = seconds_since(start);
    return rep;
}

TrialReport run_worstcase_game(const Family &f, const GameConfig &cfg, std::uint64_t instance_budget) {
    cfg.validate();
    f.check_length_discipline(cfg.k);
    const auto start = std::chrono::steady_clock::now();
    Plan plan;
    plan.adversary = cfg.adversary;
    plan.syms = f.group_symbols();
    plan.verify = f.variety();
    plan.m = cfg.pi(cfg.k);
    plan.repeats = cfg.adversary.deterministic() ? 1 : cfg.trials;
    plan.check_certificate = certificate_applies(cfg.adversary);

    std::vector<Level> levels;
    const std::vector<std::string> dk = f.level(cfg.k);
    for (std::size_t i = 0; i < dk.size(); ++i) {
        Level l;
        l.index = dk[i];
        l.alg = f.algebra_at(dk[i]);
        if (l.alg->size() == 0) throw Error(ErrorKind::InvalidArgument, "games need nonempty carriers");
        l.cert_alg = l.alg;
        l.seed = mix_seed(cfg.master_seed, i);
        l.bb.emplace(wrap(l.alg, f.xi(dk[i]), l.seed, Strictness::Strict, source_ref(f, dk[i])));
        levels.push_back(std::move(l));
    }
    TrialReport rep = run_levels(levels, plan, cfg.exec, instance_budget, "worst-case");
    rep.wall_time = seconds_since(start);
    return rep;
}

TrialReport end_to_end_theorem_demo(const Family &f, const GroupSymbols &gamma, const GameConfig &cfg,
                                    std::uint64_t instance_budget) {
    cfg.validate();
    f.check_length_discipline(cfg.k);
    const auto start = std::chrono::steady_clock::now();
    const VarietySpec rv = f.reduct_variety(gamma);
    if (rv.is_trivial()) {
        throw Error(ErrorKind::TrivialVariety, "the Gamma-reduct variety " + rv.to_string() + " is trivial");
    }
    const std::vector<std::string> psi = {gamma.mul, gamma.inv, gamma.one};
    const bool infinite = !rv.exponent();

    Plan plan;
    plan.syms = gamma;
    plan.verify = rv;
    plan.full_variety = f.variety();
    if (infinite) {
        plan.adversary = cfg.adversary.kind == AdversarySpec::Kind::Infinite
                             ? cfg.adversary
                             : AdversarySpec::infinite(OrderOracle::exact());
    } else {
        plan.adversary = cfg.adversary.kind == AdversarySpec::Kind::Finite
                             ? cfg.adversary
                             : AdversarySpec::finite(MembershipOracle::exact());
    }
    plan.repeats = plan.adversary.deterministic() ? 1 : cfg.trials;
    plan.check_certificate = certificate_applies(plan.adversary);

    std::vector<Level> levels;
    const std::vector<std::string> dk = f.level(cfg.k);
    std::uint64_t max_xi = 0;
    for (std::size_t i = 0; i < dk.size(); ++i) {
        Level l;
        l.index = dk[i];
        l.alg = f.algebra_at(dk[i]);
        if (l.alg->size() == 0) throw Error(ErrorKind::InvalidArgument, "games need nonempty carriers");
        auto reduct_alg = std::make_shared<const FiniteAlgebra>(l.alg->reduct(psi));
        if (!audit_membership(VarietySpec::all_groups(gamma), *reduct_alg)) {
            throw Error(ErrorKind::InvalidArgument, "the Gamma-reduct of " + source_ref(f, dk[i]) + " is not a group");
        }
        l.cert_alg = reduct_alg;
        const unsigned n = f.xi(dk[i]);
        max_xi = std::max<std::uint64_t>(max_xi, n);
        l.seed = mix_seed(cfg.master_seed, i);
        l.full.emplace(wrap(l.alg, n, l.seed, Strictness::Strict, source_ref(f, dk[i])));
        l.bb.emplace(reduct(*l.full, psi));
        l.rewrap.emplace(reduct(wrap(l.alg, n, mix_seed(l.seed, kRewrapStream), Strictness::Strict,
                                     source_ref(f, dk[i])),
                                psi));
        levels.push_back(std::move(l));
    }
    // Infinite exponent: one element suffices. Finite: pi(k) > xi(d), so the
    // tuple outgrows any chain of strictly increasing subgroups.
    plan.m = infinite ? 1 : max_xi + 1;

    TrialReport rep = run_levels(levels, plan, cfg.exec, instance_budget, "demo");
    rep.demo->gamma = "{" + gamma.mul + "," + gamma.inv + "," + gamma.one + "}";
    rep.demo->reduct_variety = rv.to_string();
    rep.demo->attack = plan.adversary.to_string();
    rep.wall_time = seconds_since(start);
    return rep;
}

std::vector<CurvePoint> estimate_negligibility_curve(const Family &f, const GameConfig &cfg,
                                                     std::span<const std::uint64_t> ks) {
    std::vector<CurvePoint> out;
    for (std::uint64_t k : ks) {
        GameConfig at = cfg;
        at.k = k;
        out.push_back({k, run_average_game(f, at)});
    }
    return out;
}

std::string curve_csv(std::span<const CurvePoint> curve) {
    std::string out = "k,successes,trials,estimate,wilson_low,wilson_high\n";
    char buf[160];
    for (const CurvePoint &p : curve) {
        std::snprintf(buf, sizeof buf, "%llu,%llu,%llu,%.6f,%.6f,%.6f\n", static_cast<unsigned long long>(p.k),
                      static_cast<unsigned long long>(p.report.successes),
                      static_cast<unsigned long long>(p.report.trials), p.report.estimate, p.report.wilson_low,
                      p.report.wilson_high);
        out += buf;
    }
    return out;
}

}  // namespace wpf
