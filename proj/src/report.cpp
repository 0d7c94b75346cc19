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

#include "wpf/report.hpp"

#include <set>

namespace wpf {

namespace {

const char *bfs_status_name(BfsStatus s) {
    switch (s) {
        case BfsStatus::Found:
            return "found";
        case BfsStatus::NotMember:
            return "not-member";
        case BfsStatus::BudgetExhausted:
            return "budget-exhausted";
    }
    return "?";
}

}  // namespace

Json report_envelope(const std::string &command, Json config, Json results) {
    Json j;
    j["schema_version"] = kReportSchemaVersion;
    j["tool"] = "wpf";
    j["tool_version"] = kToolVersion;
    j["command"] = command;
    j["config"] = std::move(config);
    j["results"] = std::move(results);
    return j;
}

Json to_json(const TrialReport &r, bool include_wall_time) {
    Json j;
    j["mode"] = r.mode;
    j["successes"] = r.successes;
    j["trials"] = r.trials;
    j["estimate"] = r.estimate;
    j["wilson_interval"] = {r.wilson_low, r.wilson_high};
    j["per_instance_min"] = r.per_instance_min ? Json(*r.per_instance_min) : Json();
    j["instances"] = r.instances;
    j["partial"] = r.partial;
    j["pi"] = r.pi;
    j["tau"] = r.tau;
    j["rejected"] = r.rejected;
    j["certificate_mismatches"] = r.certificate_mismatches ? Json(*r.certificate_mismatches) : Json();
    const double attempts = r.trials ? static_cast<double>(r.trials) : 1.0;
    j["query_stats"] = {
        {"total_bb_queries", r.queries.total_bb_queries},
        {"mean_bb_queries", static_cast<double>(r.queries.total_bb_queries) / attempts},
        {"max_bb_queries", r.queries.max_bb_queries},
        {"total_oracle_queries", r.queries.total_oracle_queries},
    };
    if (r.demo) {
        j["demo"] = {
            {"gamma", r.demo->gamma},
            {"reduct_variety", r.demo->reduct_variety},
            {"attack", r.demo->attack},
            {"full_accepts", r.demo->full_accepts},
            {"rewrap_accepts", r.demo->rewrap_accepts},
        };
    }
    if (include_wall_time) j["wall_time"] = r.wall_time;
    return j;
}

Json to_json(const GameConfig &cfg) {
    return {
        {"k", cfg.k},
        {"pi", cfg.pi.to_string()},
        {"tau", cfg.tau.to_string()},
        {"trials", cfg.trials},
        {"master_seed", cfg.master_seed},
        {"adversary", cfg.adversary.to_string()},
    };
}

Json to_json(const Family &f, std::uint64_t k) {
    return {
        {"name", f.name()},
        {"params", f.params()},
        {"variety", f.variety().to_string()},
        {"level", f.level(k)},
        {"eta", f.eta().to_string()},
    };
}

Json to_json(const AttackOutcome &out) {
    Json j;
    j["success"] = out.success();
    if (out.pair) {
        j["pair"] = {{"left", out.pair->left.to_text()}, {"right", out.pair->right.to_text()}};
    } else {
        j["pair"] = nullptr;
    }
    j["oracle_queries"] = out.oracle_queries;
    j["bb_queries"] = out.bb_queries;
    j["index"] = out.index ? Json(*out.index) : Json();
    j["order"] = out.order ? Json(*out.order) : Json();
    return j;
}

Json to_json(const BlackBoxDescriptor &d) {
    return {
        {"n", d.n},
        {"seed", d.seed},
        {"source", d.source},
        {"strictness", d.strictness == Strictness::Strict ? "strict" : "permissive"},
        {"psi", d.psi},
    };
}

BlackBoxDescriptor descriptor_from_json(const Json &j) {
    try {
        BlackBoxDescriptor d;
        d.n = j.at("n").get<unsigned>();
        d.seed = j.at("seed").get<std::uint64_t>();
        d.source = j.at("source").get<std::string>();
        const std::string s = j.value("strictness", std::string("strict"));
        if (s != "strict" && s != "permissive") throw Error(ErrorKind::Parse, "strictness must be strict or permissive");
        d.strictness = s == "strict" ? Strictness::Strict : Strictness::Permissive;
        if (j.contains("psi")) d.psi = j.at("psi").get<std::vector<std::string>>();
        return d;
    } catch (const nlohmann::json::exception &e) {
        throw Error(ErrorKind::Parse, std::string("descriptor: ") + e.what());
    }
}

Json to_json(const qsim::CircuitCheck &c) {
    return {{"cases", c.cases}, {"mismatches", c.mismatches}, {"max_amplitude_error", c.max_amplitude_error},
            {"ok", c.ok()}};
}

Json to_json(const qsim::ConversionReport &r) {
    return {
        {"group", r.group},
        {"n", r.n},
        {"oracle_to_pair", {{"M", to_json(r.pair_m)}, {"M_prime", to_json(r.pair_m_inv)}}},
        {"pair_to_oracle",
         {{"U_mul", to_json(r.oracle_mul)}, {"U_inv", to_json(r.oracle_inv)}, {"U_one", to_json(r.oracle_one)}}},
        {"round_trip",
         {{"U_mul", to_json(r.round_mul)}, {"U_inv", to_json(r.round_inv)}, {"U_one", to_json(r.round_one)}}},
        {"ok", r.ok()},
    };
}

Json to_json(const qsim::QpeResult &r) {
    Json shots = Json::array();
    std::set<std::uint64_t> candidates, verified;
    for (const qsim::QpeShot &s : r.shots) {
        candidates.insert(s.candidates.begin(), s.candidates.end());
        if (s.verified) verified.insert(*s.verified);
        shots.push_back({{"measurement", s.measurement},
                         {"candidates", s.candidates},
                         {"verified", s.verified ? Json(*s.verified) : Json()}});
    }
    return {{"order", r.order ? Json(*r.order) : Json()},
            {"candidates", candidates},
            {"verified", verified},
            {"queries", r.queries},
            {"shots", std::move(shots)}};
}

Json to_json(const BfsResult &r) {
    return {{"status", bfs_status_name(r.status)},
            {"slp", r.slp ? Json(r.slp->to_text()) : Json()},
            {"length", r.slp ? Json(r.slp->length()) : Json()},
            {"applications", r.applications}};
}

}  // namespace wpf
