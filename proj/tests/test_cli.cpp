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

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "cli.hpp"
#include "wpf/report.hpp"

using wpf::Json;
namespace fs = std::filesystem;

namespace {

struct Invocation {
    int code;
    std::string out, err;
    Json json() const { return Json::parse(out); }
};

Invocation run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = wpf::wpf_main(args, out, err);
    return {code, out.str(), err.str()};
}

class Cli : public ::testing::Test {
   protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() / ("wpf_cli_" + std::to_string(::getpid()) + "_" +
                                            ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string path(const std::string &name) const { return (dir_ / name).string(); }
    std::string write(const std::string &name, const std::string &text) const {
        std::ofstream(path(name)) << text;
        return path(name);
    }
    static std::string slurp(const std::string &p) {
        std::ifstream in(p);
        return {std::istreambuf_iterator<char>(in), {}};
    }

    fs::path dir_;
};

}  // namespace

TEST_F(Cli, GameAverage) {
    const Invocation r = run({"game", "avg", "--family", "zn-star", "--params", "15,21,33,35", "--trials", "200",
                       "--adversary", "inf:exact", "--out", path("avg.json")});
    ASSERT_EQ(r.code, 0) << r.err;
    const Json j = r.json();
    EXPECT_EQ(j["command"], "game avg");
    EXPECT_EQ(j["results"]["estimate"], 1.0);
    EXPECT_EQ(j["results"]["successes"], 200);
    EXPECT_EQ(j["config"]["family"]["name"], "zn-star");
    EXPECT_EQ(slurp(path("avg.json")), r.out);
}

TEST_F(Cli, GameWorst) {
    const Invocation r = run({"game", "worst", "--family", "elem-abelian", "--params", "p=2,k=2", "--k", "2", "--pi", "2",
                       "--adversary", "fin:exact"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.json()["results"]["per_instance_min"], 0.0);
    EXPECT_EQ(r.json()["results"]["certificate_mismatches"], 0);

    const Invocation ok = run({"game", "worst", "--family", "elem-abelian", "--params", "p=2,k=2..3", "--k", "3", "--pi",
                        "k+1", "--adversary", "fin:exact", "--serial"});
    ASSERT_EQ(ok.code, 0) << ok.err;
    EXPECT_EQ(ok.json()["results"]["per_instance_min"], 1.0);
    EXPECT_EQ(ok.json()["results"]["instances"], 4096);
}

TEST_F(Cli, DemoTheorem) {
    const Invocation r = run({"demo", "theorem", "--family", "ring-zn", "--params", "6..12", "--gamma", "additive"});
    ASSERT_EQ(r.code, 0) << r.err;
    const Json res = r.json()["results"];
    EXPECT_EQ(res["per_instance_min"], 1.0);
    EXPECT_EQ(res["demo"]["full_accepts"], res["successes"]);
    EXPECT_EQ(res["demo"]["rewrap_accepts"], res["successes"]);

    const Invocation trivial = run({"demo", "theorem", "--family", "zn-star", "--params", "2"});
    EXPECT_EQ(trivial.code, 2);
    EXPECT_NE(trivial.err.find("trivial"), std::string::npos);
}

TEST_F(Cli, CurveWithCsv) {
    const Invocation r = run({"curve", "--family", "zn-star", "--params", "15,21", "--adversary", "fail", "--trials", "10",
                       "--ks", "1,2,3", "--csv", path("c.csv")});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.json()["results"].size(), 3u);
    const std::string csv = slurp(path("c.csv"));
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "k,successes,trials,estimate,wilson_low,wilson_high");
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 4);
}

TEST_F(Cli, SlpSearchAndEval) {
    const Invocation s = run({"slp", "search", "--algebra", "zn-star:7", "--gens", "3", "--target", "6"});
    ASSERT_EQ(s.code, 0) << s.err;
    EXPECT_EQ(s.json()["results"]["status"], "found");
    EXPECT_EQ(s.json()["results"]["length"], 3);

    const std::string prog = write("p.txt", s.json()["results"]["slp"].get<std::string>());
    const Invocation e = run({"slp", "eval", "--algebra", "zn-star:7", "--gens", "3", "--program", prog, "--variety",
                       "abelian"});
    ASSERT_EQ(e.code, 0) << e.err;
    EXPECT_EQ(e.json()["results"]["value"], "6");
    EXPECT_EQ(e.json()["results"]["normal_form"], "a1^3");

    const Invocation miss = run({"slp", "search", "--algebra", "zn-add:6", "--gens", "2", "--target", "3"});
    ASSERT_EQ(miss.code, 0) << miss.err;
    EXPECT_EQ(miss.json()["results"]["status"], "not-member");

    const std::string table = write("z2.txt",
                                    "signature: mul/2, inv/1, one/0\ncarrier: e x\n"
                                    "table mul\ne x\nx e\ntable inv\ne x\ntable one\ne\n");
    const Invocation f = run({"slp", "search", "--algebra-file", table, "--gens", "x", "--target", "e"});
    ASSERT_EQ(f.code, 0) << f.err;
    EXPECT_EQ(f.json()["results"]["status"], "found");
}

TEST_F(Cli, WrapQueryRoundTrip) {
    const Invocation w = run({"wrap", "--algebra", "zn-add:5", "--seed", "3", "--out", path("d.json")});
    ASSERT_EQ(w.code, 0) << w.err;
    EXPECT_EQ(w.json()["results"]["size"], 5);

    const Invocation one = run({"query", "--descriptor", path("d.json"), "--symbol", "one"});
    ASSERT_EQ(one.code, 0) << one.err;
    const std::string e = one.json()["results"]["answer"];
    EXPECT_EQ(e.size(), 3u);
    const Invocation sq = run({"query", "--descriptor", path("d.json"), "--symbol", "mul", "--operands", e + "," + e});
    ASSERT_EQ(sq.code, 0) << sq.err;
    EXPECT_EQ(sq.json()["results"]["answer"], e);

    const Invocation inv = run({"query", "--descriptor", path("d.json"), "--symbol", "inv", "--operands", e});
    EXPECT_EQ(inv.json()["results"]["answer"], e);

    const Invocation bad = run({"query", "--descriptor", path("d.json"), "--symbol", "mul", "--operands", e});
    EXPECT_EQ(bad.code, 2);
}

TEST_F(Cli, LambdaCheck) {
    const std::string left = write("l.txt", "in 1\nop mul 1 1\nop mul 2 2\n");
    const std::string right = write("r.txt", "op one\n");
    const Invocation yes = run({"lambda-check", "--algebra", "zn-star:15", "--gens", "2", "--left", left, "--right", right});
    ASSERT_EQ(yes.code, 0) << yes.err;
    EXPECT_EQ(yes.json()["results"]["in_lambda"], true);
    const Invocation no = run({"lambda-check", "--algebra", "zn-star:15", "--gens", "7", "--left", left, "--right", left});
    EXPECT_EQ(no.json()["results"]["in_lambda"], false);
}

TEST_F(Cli, Attacks) {
    const Invocation inf = run({"attack", "inf", "--family", "zn-star", "--params", "15", "--index", "15", "--element", "2"});
    ASSERT_EQ(inf.code, 0) << inf.err;
    EXPECT_EQ(inf.json()["results"]["outcome"]["success"], true);
    EXPECT_EQ(inf.json()["results"]["outcome"]["order"], 4);
    EXPECT_EQ(inf.json()["results"]["verified"], true);

    const Invocation fin = run({"attack", "fin", "--family", "elem-abelian", "--params", "p=2,k=3", "--index", "2^3", "-m",
                         "4", "--seed", "5"});
    ASSERT_EQ(fin.code, 0) << fin.err;
    const Json res = fin.json()["results"];
    EXPECT_EQ(res["outcome"]["success"], true);
    EXPECT_EQ(res["outcome"]["index"], res["certificate"]);
    EXPECT_EQ(res["verified"], true);
    EXPECT_EQ(res["tuple"].size(), 4u);
}

TEST_F(Cli, Qsim) {
    const Invocation c = run({"qsim", "check-oracle", "--algebra", "elem-abelian:2^2"});
    ASSERT_EQ(c.code, 0) << c.err;
    EXPECT_EQ(c.json()["results"]["ok"], true);

    const Invocation o = run({"qsim", "order", "--modulus", "15", "--base", "2", "--qubits", "6", "--shots", "20"});
    ASSERT_EQ(o.code, 0) << o.err;
    const Json verified = o.json()["results"]["verified"];
    for (const Json &s : verified) EXPECT_EQ(s.get<int>() % 4, 0);
}

TEST_F(Cli, ExitCodes) {
    EXPECT_EQ(run({"--help"}).code, 0);
    EXPECT_NE(run({}).code, 0);
    const Invocation missing = run({"game", "avg", "--params", "15"});
    EXPECT_NE(missing.code, 0);
    EXPECT_NE(missing.code, 2);
    EXPECT_NE(run({"game", "avg", "--family", "zn-star", "--params", "15", "--trials", "many"}).code, 0);
    const Invocation unknown = run({"game", "avg", "--family", "zn-foo", "--params", "3"});
    EXPECT_EQ(unknown.code, 2);
    EXPECT_NE(unknown.err.find("unknown family"), std::string::npos);
    EXPECT_EQ(run({"game", "avg", "--family", "zn-star", "--params", "15", "--adversary", "inf:eps=2"}).code, 2);
    EXPECT_EQ(run({"query", "--descriptor", path("absent.json"), "--symbol", "one"}).code, 2);
}

TEST_F(Cli, RepeatedRunsAreByteIdentical) {
    const std::vector<std::vector<std::string>> commands = {
        {"game", "avg", "--family", "zn-star", "--params", "15,21,33", "--adversary", "inf:eps=0.5", "--seed", "9"},
        {"game", "worst", "--family", "elem-abelian", "--params", "p=2,k=2", "--k", "2", "--pi", "2", "--adversary",
         "fin:eps=0.5", "--trials", "3"},
        {"attack", "fin", "--family", "elem-abelian", "--params", "p=3,k=2", "--index", "3^2", "-m", "3"},
        {"qsim", "order", "--shots", "10", "--qubits", "5"},
    };
    for (const auto &cmd : commands) {
        const Invocation a = run(cmd), b = run(cmd);
        ASSERT_EQ(a.code, 0) << a.err;
        EXPECT_EQ(a.out, b.out);
    }
}
