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

#include "cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <functional>
#include <sstream>

#include "wpf/algebras.hpp"
#include "wpf/attacks.hpp"
#include "wpf/blackbox.hpp"
#include "wpf/families.hpp"
#include "wpf/games.hpp"
#include "wpf/report.hpp"
#include "wpf/text_io.hpp"

namespace wpf {

namespace {

std::vector<std::string> split_list(const std::string &text) {
    std::vector<std::string> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::InvalidArgument, "cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void emit(const Json &j, std::ostream &out, const std::string &path) {
    const std::string text = j.dump(2) + "\n";
    out << text;
    if (!path.empty()) {
        std::ofstream file(path, std::ios::binary);
        if (!file) throw Error(ErrorKind::InvalidArgument, "cannot write " + path);
        file << text;
    }
}

Elem element_by_label(const FiniteAlgebra &alg, const std::string &label) {
    auto e = alg.find_label(label);
    if (!e) throw Error(ErrorKind::InvalidArgument, "no element labelled '" + label + "' in " + alg.name());
    return *e;
}

std::vector<Elem> elements_by_label(const FiniteAlgebra &alg, const std::string &list) {
    std::vector<Elem> out;
    for (const std::string &l : split_list(list)) out.push_back(element_by_label(alg, l));
    return out;
}

VarietySpec parse_variety(const std::string &text, const GroupSymbols &syms, const Signature &sig) {
    auto arg = [&](std::string_view prefix) { return std::stoull(text.substr(prefix.size())); };
    if (text == "all-algebras") return VarietySpec::all_algebras(sig);
    if (text == "all-groups") return VarietySpec::all_groups(syms);
    if (text == "abelian") return VarietySpec::abelian_groups(syms);
    try {
        if (text.starts_with("abelian-exp=")) return VarietySpec::abelian_groups_exp(arg("abelian-exp="), syms);
        if (text.starts_with("elem-abelian=")) return VarietySpec::elementary_abelian(arg("elem-abelian="), syms);
    } catch (const std::logic_error &) {
        throw Error(ErrorKind::Parse, "bad variety parameter in '" + text + "'");
    }
    throw Error(ErrorKind::Parse, "variety must be all-algebras, all-groups, abelian, abelian-exp=E or elem-abelian=P");
}

GroupSymbols parse_group_symbols(const std::string &text, const Signature &sig) {
    if (text == "auto") return sig.find("add") ? GroupSymbols::additive() : GroupSymbols::multiplicative();
    if (text == "additive") return GroupSymbols::additive();
    if (text == "multiplicative") return GroupSymbols::multiplicative();
    throw Error(ErrorKind::Parse, "group symbols must be auto, additive or multiplicative");
}

std::shared_ptr<const FiniteAlgebra> load_algebra(const std::string &source, const std::string &file) {
    if (!file.empty()) return std::make_shared<const FiniteAlgebra>(parse_algebra(read_file(file), file));
    if (source.empty()) throw Error(ErrorKind::InvalidArgument, "give --algebra or --algebra-file");
    return algebra_from_source(source);
}

struct GameOpts {
    std::string family, params, pi = "1", tau = "0", adversary = "inf:exact", out;
    std::uint64_t k = 1, trials = 100, seed = 0, budget = kWorstCaseInstanceBudget;
    bool serial = false, wall_time = false;
};

void add_family_options(CLI::App *cmd, std::string &family, std::string &params) {
    cmd->add_option("--family", family, "zn-add, zn-star, elem-abelian, ring-zn or direct-power")->required();
    cmd->add_option("--params", params, "family parameters, e.g. 15,21,33 or p=2,k=2..4")->required();
}

void add_game_options(CLI::App *cmd, GameOpts &o, bool with_budget) {
    add_family_options(cmd, o.family, o.params);
    cmd->add_option("--k", o.k, "security level")->capture_default_str();
    cmd->add_option("--pi", o.pi, "tuple length polynomial in k")->capture_default_str();
    cmd->add_option("--tau", o.tau, "auxiliary tuple length polynomial in k")->capture_default_str();
    cmd->add_option("--trials", o.trials, "trials (repeats per instance for randomized adversaries)")
        ->capture_default_str();
    cmd->add_option("--adversary", o.adversary, "inf:exact, inf:eps=E, inf:qpe, fin:exact, fin:eps=E or fail")
        ->capture_default_str();
    cmd->add_option("--seed", o.seed, "master seed")->capture_default_str();
    if (with_budget) cmd->add_option("--budget", o.budget, "instance budget")->capture_default_str();
    cmd->add_flag("--serial", o.serial, "use the serial reference loop");
    cmd->add_flag("--wall-time", o.wall_time, "include wall time in the report");
    cmd->add_option("--out", o.out, "also write the JSON report here");
}

GameConfig make_config(const GameOpts &o) {
    GameConfig cfg;
    cfg.k = o.k;
    cfg.pi = Poly::parse(o.pi);
    cfg.tau = Poly::parse(o.tau);
    cfg.trials = o.trials;
    cfg.master_seed = o.seed;
    cfg.adversary = AdversarySpec::parse(o.adversary);
    cfg.exec = o.serial ? Exec::Serial : Exec::Parallel;
    return cfg;
}

Json game_config_json(const Family &f, const GameConfig &cfg) {
    Json j;
    j["family"] = to_json(f, cfg.k);
    j["game"] = to_json(cfg);
    return j;
}

struct AttackOpts {
    std::string family, params, index, oracle = "exact", element, out;
    std::uint64_t seed = 0, m = 1;
};

struct Instance {
    std::shared_ptr<const FiniteAlgebra> alg;
    std::optional<BlackBoxAlgebra> bb;
};

Instance make_instance(const Family &f, const std::string &index, std::uint64_t seed) {
    Instance inst;
    inst.alg = f.algebra_at(index);
    inst.bb.emplace(wrap(inst.alg, f.xi(index), mix_seed(seed, 0), Strictness::Strict, f.source_ref(index)));
    return inst;
}

Json attack_config_json(const AttackOpts &o, const Family &f) {
    Json j;
    j["family"] = {{"name", f.name()}, {"params", f.params()}};
    j["index"] = o.index;
    j["seed"] = o.seed;
    j["oracle"] = o.oracle;
    return j;
}

}  // namespace

int wpf_main(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Black-box algebra relation finding and weak pseudo-freeness games", "wpf"};
    app.require_subcommand(1);
    std::function<void()> action;

    // game avg | worst
    GameOpts game;
    auto *game_cmd = app.add_subcommand("game", "average-case or worst-case game");
    game_cmd->require_subcommand(1);
    auto *game_avg = game_cmd->add_subcommand("avg", "average-case game");
    auto *game_worst = game_cmd->add_subcommand("worst", "worst-case game over enumerated instances");
    add_game_options(game_avg, game, false);
    add_game_options(game_worst, game, true);
    game_avg->callback([&] {
        action = [&] {
            const Family f = Family::parse(game.family, game.params);
            const GameConfig cfg = make_config(game);
            const TrialReport r = run_average_game(f, cfg);
            emit(report_envelope("game avg", game_config_json(f, cfg), to_json(r, game.wall_time)), out, game.out);
        };
    });
    game_worst->callback([&] {
        action = [&] {
            const Family f = Family::parse(game.family, game.params);
            const GameConfig cfg = make_config(game);
            const TrialReport r = run_worstcase_game(f, cfg, game.budget);
            Json config = game_config_json(f, cfg);
            config["instance_budget"] = game.budget;
            emit(report_envelope("game worst", std::move(config), to_json(r, game.wall_time)), out, game.out);
        };
    });

    // demo theorem
    GameOpts demo;
    std::string gamma_text = "full";
    auto *demo_cmd = app.add_subcommand("demo", "end-to-end pipelines");
    demo_cmd->require_subcommand(1);
    auto *demo_theorem = demo_cmd->add_subcommand("theorem", "Gamma-reduct relation finding on an expanded-group family");
    add_game_options(demo_theorem, demo, true);
    demo_theorem->add_option("--gamma", gamma_text, "additive, multiplicative or full")->capture_default_str();
    demo_theorem->callback([&] {
        action = [&] {
            const Family f = Family::parse(demo.family, demo.params);
            const GameConfig cfg = make_config(demo);
            const TrialReport r = end_to_end_theorem_demo(f, parse_gamma(gamma_text, f), cfg, demo.budget);
            Json config = game_config_json(f, cfg);
            config["gamma"] = gamma_text;
            config["instance_budget"] = demo.budget;
            emit(report_envelope("demo theorem", std::move(config), to_json(r, demo.wall_time)), out, demo.out);
        };
    });

    // curve
    GameOpts curve;
    std::string ks_text = "1,2,3,4", csv_path;
    auto *curve_cmd = app.add_subcommand("curve", "average-game estimate across security levels");
    add_game_options(curve_cmd, curve, false);
    curve_cmd->add_option("--ks", ks_text, "comma-separated security levels")->capture_default_str();
    curve_cmd->add_option("--csv", csv_path, "also write the curve as CSV");
    curve_cmd->callback([&] {
        action = [&] {
            const Family f = Family::parse(curve.family, curve.params);
            const GameConfig cfg = make_config(curve);
            std::vector<std::uint64_t> ks;
            for (const std::string &s : split_list(ks_text)) ks.push_back(std::stoull(s));
            const std::vector<CurvePoint> points = estimate_negligibility_curve(f, cfg, ks);
            Json rows = Json::array();
            for (const CurvePoint &p : points) rows.push_back({{"k", p.k}, {"report", to_json(p.report, curve.wall_time)}});
            Json config = game_config_json(f, cfg);
            config["ks"] = ks;
            emit(report_envelope("curve", std::move(config), std::move(rows)), out, curve.out);
            if (!csv_path.empty()) {
                std::ofstream file(csv_path, std::ios::binary);
                if (!file) throw Error(ErrorKind::InvalidArgument, "cannot write " + csv_path);
                file << curve_csv(points);
            }
        };
    });

    // slp search | eval
    std::string slp_source, slp_file, slp_gens, slp_target, slp_program, slp_variety, slp_syms = "auto",
                                                                                     slp_out;
    std::uint64_t slp_budget = 1'000'000;
    auto *slp_cmd = app.add_subcommand("slp", "straight-line programs");
    slp_cmd->require_subcommand(1);
    auto *slp_search = slp_cmd->add_subcommand("search", "shortest program computing a target from generators");
    auto *slp_eval = slp_cmd->add_subcommand("eval", "run a program on elements");
    for (auto *cmd : {slp_search, slp_eval}) {
        cmd->add_option("--algebra", slp_source, "built-in algebra, e.g. zn-star:15 or elem-abelian:2^3");
        cmd->add_option("--algebra-file", slp_file, "algebra in the text table format");
        cmd->add_option("--gens", slp_gens, "comma-separated element labels")->required();
        cmd->add_option("--out", slp_out, "also write the JSON report here");
    }
    slp_search->add_option("--target", slp_target, "target element label")->required();
    slp_search->add_option("--budget", slp_budget, "operation applications allowed")->capture_default_str();
    slp_eval->add_option("--program", slp_program, "file holding the program text")->required();
    slp_eval->add_option("--variety", slp_variety, "also print the free-algebra normal form in this variety");
    slp_eval->add_option("--group-symbols", slp_syms, "auto, additive or multiplicative")->capture_default_str();
    slp_search->callback([&] {
        action = [&] {
            auto alg = load_algebra(slp_source, slp_file);
            const std::vector<Elem> g = elements_by_label(*alg, slp_gens);
            const Elem target = element_by_label(*alg, slp_target);
            const BfsResult r = shortest_slp_bfs(*alg, std::span<const Elem>(g), target, slp_budget);
            Json config = {{"algebra", alg->name()}, {"gens", slp_gens}, {"target", slp_target}, {"budget", slp_budget}};
            emit(report_envelope("slp search", std::move(config), to_json(r)), out, slp_out);
        };
    });
    slp_eval->callback([&] {
        action = [&] {
            auto alg = load_algebra(slp_source, slp_file);
            const std::vector<Elem> g = elements_by_label(*alg, slp_gens);
            const Slp u = Slp::from_text(read_file(slp_program));
            if (auto e = validate(u, g.size(), alg->signature())) throw *e;
            const Elem v = run(u, *alg, std::span<const Elem>(g));
            Json results = {{"value", alg->label(v)}, {"length", u.length()}};
            if (!slp_variety.empty()) {
                const VarietySpec var = parse_variety(slp_variety, parse_group_symbols(slp_syms, alg->signature()), alg->signature());
                results["normal_form"] = to_free(u, var).to_string();
            }
            Json config = {{"algebra", alg->name()}, {"gens", slp_gens}, {"program", u.to_text()}};
            emit(report_envelope("slp eval", std::move(config), std::move(results)), out, slp_out);
        };
    });

    // wrap
    std::string wrap_source, wrap_psi, wrap_out;
    std::uint64_t wrap_seed = 0;
    unsigned wrap_n = 0;
    bool wrap_permissive = false;
    auto *wrap_cmd = app.add_subcommand("wrap", "describe a black-box instance");
    wrap_cmd->add_option("--algebra", wrap_source, "built-in algebra, e.g. zn-star:15")->required();
    wrap_cmd->add_option("--seed", wrap_seed, "encoding seed")->capture_default_str();
    wrap_cmd->add_option("--n", wrap_n, "encoding width (default: minimal)");
    wrap_cmd->add_option("--psi", wrap_psi, "comma-separated answered symbols (default: all)");
    wrap_cmd->add_flag("--permissive", wrap_permissive, "answer 0^n on operands outside the carrier");
    wrap_cmd->add_option("--out", wrap_out, "also write the JSON report here");
    wrap_cmd->callback([&] {
        action = [&] {
            auto alg = algebra_from_source(wrap_source);
            const unsigned n = wrap_n ? wrap_n : min_width(alg->size());
            BlackBoxAlgebra bb = wrap(alg, n, wrap_seed,
                                      wrap_permissive ? Strictness::Permissive : Strictness::Strict, wrap_source);
            if (!wrap_psi.empty()) bb = reduct(bb, split_list(wrap_psi));
            Json config = {{"algebra", wrap_source}, {"seed", wrap_seed}, {"n", n}};
            Json results = {{"descriptor", to_json(bb.descriptor())},
                            {"size", bb.size()},
                            {"signature", bb.signature().to_string()}};
            emit(report_envelope("wrap", std::move(config), std::move(results)), out, wrap_out);
        };
    });

    // query
    std::string query_desc, query_symbol, query_operands;
    auto *query_cmd = app.add_subcommand("query", "one oracle query against a described instance");
    query_cmd->add_option("--descriptor", query_desc, "JSON file from `wpf wrap`")->required();
    query_cmd->add_option("--symbol", query_symbol, "operation symbol")->required();
    query_cmd->add_option("--operands", query_operands, "comma-separated bit strings");
    query_cmd->callback([&] {
        action = [&] {
            Json j;
            try {
                j = Json::parse(read_file(query_desc));
            } catch (const nlohmann::json::exception &e) {
                throw Error(ErrorKind::Parse, e.what());
            }
            if (j.contains("results")) j = j["results"];
            if (j.contains("descriptor")) j = j["descriptor"];
            const BlackBoxDescriptor d = descriptor_from_json(j);
            BlackBoxAlgebra bb = wrap(algebra_from_source(d.source), d.n, d.seed, d.strictness, d.source);
            if (!d.psi.empty()) bb = reduct(bb, d.psi);
            std::vector<Code> ops;
            for (const std::string &s : split_list(query_operands)) {
                if (s.size() != d.n) throw Error(ErrorKind::WidthMismatch, "operand " + s + " is not " + std::to_string(d.n) + " bits");
                ops.push_back(code_from_string(s));
            }
            const Code answer = bb.query(query_symbol, ops);
            Json config = {{"descriptor", to_json(d)}, {"symbol", query_symbol}, {"operands", split_list(query_operands)}};
            emit(report_envelope("query", std::move(config),
                                 {{"answer", code_to_string(answer, d.n)}, {"queries", bb.queries()}}),
                 out, "");
        };
    });

    // lambda-check
    std::string lam_source, lam_file, lam_variety = "abelian", lam_syms = "auto", lam_gens, lam_left,
                                                                lam_right;
    auto *lam_cmd = app.add_subcommand("lambda-check", "is (left, right) a nontrivial relation among the elements");
    lam_cmd->add_option("--algebra", lam_source, "built-in algebra, e.g. zn-star:15");
    lam_cmd->add_option("--algebra-file", lam_file, "algebra in the text table format");
    lam_cmd->add_option("--variety", lam_variety, "all-algebras, all-groups, abelian, abelian-exp=E, elem-abelian=P")
        ->capture_default_str();
    lam_cmd->add_option("--group-symbols", lam_syms, "auto, additive or multiplicative")->capture_default_str();
    lam_cmd->add_option("--gens", lam_gens, "comma-separated element labels")->required();
    lam_cmd->add_option("--left", lam_left, "file holding the left program")->required();
    lam_cmd->add_option("--right", lam_right, "file holding the right program")->required();
    lam_cmd->callback([&] {
        action = [&] {
            auto alg = load_algebra(lam_source, lam_file);
            const VarietySpec v = parse_variety(lam_variety, parse_group_symbols(lam_syms, alg->signature()), alg->signature());
            const std::vector<Elem> g = elements_by_label(*alg, lam_gens);
            const RelationPair pair{Slp::from_text(read_file(lam_left)), Slp::from_text(read_file(lam_right))};
            const bool in = lambda_contains(v, g.size(), *alg, std::span<const Elem>(g), pair);
            Json config = {{"algebra", alg->name()}, {"variety", v.to_string()}, {"gens", lam_gens}};
            emit(report_envelope("lambda-check", std::move(config), {{"in_lambda", in}}), out, "");
        };
    });

    // attack inf | fin
    AttackOpts atk;
    auto *attack_cmd = app.add_subcommand("attack", "run one relation-finding attack");
    attack_cmd->require_subcommand(1);
    auto *attack_inf = attack_cmd->add_subcommand("inf", "order finding: (a^s, 1)");
    auto *attack_fin = attack_cmd->add_subcommand("fin", "constructive membership on a long tuple");
    for (auto *cmd : {attack_inf, attack_fin}) {
        add_family_options(cmd, atk.family, atk.params);
        cmd->add_option("--index", atk.index, "family index d")->required();
        cmd->add_option("--seed", atk.seed, "seed for the encoding, the tuple and the oracle")->capture_default_str();
        cmd->add_option("--oracle", atk.oracle, "exact, eps=E, or qpe (inf only)")->capture_default_str();
        cmd->add_option("--out", atk.out, "also write the JSON report here");
    }
    attack_inf->add_option("--element", atk.element, "element label (default: random)");
    attack_fin->add_option("-m", atk.m, "tuple length")->required();
    attack_inf->callback([&] {
        action = [&] {
            const Family f = Family::parse(atk.family, atk.params);
            Instance inst = make_instance(f, atk.index, atk.seed);
            Rng rng(mix_seed(atk.seed, 1));
            const Elem e = atk.element.empty() ? Family::sample_element(*inst.alg, rng)
                                               : element_by_label(*inst.alg, atk.element);
            const Code g = inst.bb->encode(e);
            const AdversarySpec adv = AdversarySpec::parse("inf:" + atk.oracle);
            const AttackOutcome o = attack_infinite_exponent(*inst.bb, f.group_symbols(), g, adv.order, rng);
            BlackBoxAlgebra verifier = *inst.bb;
            const Code tuple[1] = {g};
            const bool verified = o.pair && lambda_contains(f.variety(), 1, verifier, std::span<const Code>(tuple), *o.pair);
            Json results = {{"descriptor", to_json(inst.bb->descriptor())},
                            {"element", code_to_string(g, inst.bb->width())},
                            {"outcome", to_json(o)},
                            {"verified", verified}};
            emit(report_envelope("attack inf", attack_config_json(atk, f), std::move(results)), out, atk.out);
        };
    });
    attack_fin->callback([&] {
        action = [&] {
            const Family f = Family::parse(atk.family, atk.params);
            Instance inst = make_instance(f, atk.index, atk.seed);
            Rng rng(mix_seed(atk.seed, 1));
            std::vector<Code> g;
            Json tuple = Json::array();
            for (std::uint64_t i = 0; i < atk.m; ++i) {
                g.push_back(inst.bb->encode(Family::sample_element(*inst.alg, rng)));
                tuple.push_back(code_to_string(g.back(), inst.bb->width()));
            }
            const AdversarySpec adv = AdversarySpec::parse("fin:" + atk.oracle);
            const AttackOutcome o = attack_finite(*inst.bb, g, adv.membership, rng);
            BlackBoxAlgebra verifier = *inst.bb;
            const bool verified = o.pair && lambda_contains(f.variety(), g.size(), verifier, std::span<const Code>(g), *o.pair);
            const auto cert = counting_certificate(*inst.bb, g);
            Json config = attack_config_json(atk, f);
            config["m"] = atk.m;
            Json results = {{"descriptor", to_json(inst.bb->descriptor())},
                            {"tuple", std::move(tuple)},
                            {"outcome", to_json(o)},
                            {"verified", verified},
                            {"certificate", cert ? Json(*cert) : Json()}};
            emit(report_envelope("attack fin", std::move(config), std::move(results)), out, atk.out);
        };
    });

    // qsim check-oracle | order
    std::string q_source, q_syms = "auto", q_out;
    std::uint64_t q_seed = 0, q_modulus = 15, q_base = 2, q_shots = 1;
    unsigned q_qubits = 8, q_max_qubits = 26;
    bool q_serial = false;
    auto *qsim_cmd = app.add_subcommand("qsim", "statevector checks");
    qsim_cmd->require_subcommand(1);
    auto *q_check = qsim_cmd->add_subcommand("check-oracle", "oracle <-> (M, M') conversions on every basis state");
    auto *q_order = qsim_cmd->add_subcommand("order", "phase-estimation order finding in Z_N^*");
    q_check->add_option("--algebra", q_source, "built-in group, e.g. zn-add:5 or elem-abelian:2^2")->required();
    q_check->add_option("--group-symbols", q_syms, "auto, additive or multiplicative")->capture_default_str();
    q_order->add_option("--modulus", q_modulus, "N")->capture_default_str();
    q_order->add_option("--base", q_base, "g in Z_N^*")->capture_default_str();
    q_order->add_option("--qubits", q_qubits, "counting qubits")->capture_default_str();
    q_order->add_option("--shots", q_shots, "measurements")->capture_default_str();
    q_order->add_option("--max-qubits", q_max_qubits, "simulator budget")->capture_default_str();
    for (auto *cmd : {q_check, q_order}) {
        cmd->add_option("--seed", q_seed, "encoding and sampling seed")->capture_default_str();
        cmd->add_flag("--serial", q_serial, "use the serial reference kernels");
        cmd->add_option("--out", q_out, "also write the JSON report here");
    }
    q_check->callback([&] {
        action = [&] {
            auto alg = algebra_from_source(q_source);
            const GroupSymbols syms = parse_group_symbols(q_syms, alg->signature());
            const std::vector<std::string> psi = {syms.mul, syms.inv, syms.one};
            BlackBoxAlgebra bb = reduct(wrap(alg, min_width(alg->size()), q_seed, Strictness::Strict, q_source), psi);
            const qsim::ConversionReport r = qsim::check_conversions(bb, syms, q_serial ? Exec::Serial : Exec::Parallel);
            Json config = {{"algebra", q_source}, {"seed", q_seed}};
            emit(report_envelope("qsim check-oracle", std::move(config), to_json(r)), out, q_out);
        };
    });
    q_order->callback([&] {
        action = [&] {
            if (q_modulus < 2 || q_modulus > UINT32_MAX) throw Error(ErrorKind::InvalidArgument, "modulus out of range");
            auto alg = std::make_shared<const FiniteAlgebra>(zn_star(static_cast<std::uint32_t>(q_modulus)));
            const Elem base = element_by_label(*alg, std::to_string(q_base));
            const std::string ref = "zn-star:" + std::to_string(q_modulus);
            BlackBoxAlgebra bb = wrap(alg, min_width(alg->size()), mix_seed(q_seed, 0), Strictness::Strict, ref);
            Rng rng(mix_seed(q_seed, 1));
            const qsim::QpeOptions opts{q_qubits, q_shots, q_max_qubits, q_serial ? Exec::Serial : Exec::Parallel};
            const qsim::QpeResult r = qsim::order_find_qpe(bb, GroupSymbols{}, bb.encode(base), opts, rng);
            Json config = {{"modulus", q_modulus}, {"base", q_base}, {"qubits", q_qubits}, {"shots", q_shots},
                           {"seed", q_seed}};
            emit(report_envelope("qsim order", std::move(config), to_json(r)), out, q_out);
        };
    });

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        return app.exit(e, out, err);
    }
    try {
        if (action) action();
    } catch (const Error &e) {
        err << "wpf: " << e.what() << "\n";
        return 2;
    } catch (const std::exception &e) {
        err << "wpf: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

}  // namespace wpf
