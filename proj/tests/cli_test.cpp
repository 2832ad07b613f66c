/*
   Copyright 2026 The ramify Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <random>

#include "ramify/corpus.hpp"
#include "ramify/report.hpp"

using namespace ramify;
using gf::FieldCtx;
using gf::FieldElem;

namespace {

int run_cli(const std::string& args) {
    const std::string cmd = std::string(RAMIFY_CLI) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST(Parse, Examples) {
    const auto F3 = FieldCtx::make(3, 1);
    const auto f = parse_poly("t1^-2*t2", F3);
    ASSERT_EQ(f.size(), 1u);
    EXPECT_TRUE(f.coeff({-2, 1}).is_one());

    const auto F5 = FieldCtx::make(5, 1);
    const auto g = parse_poly("2*t1^-3 + t2^-2", F5);
    EXPECT_EQ(g.size(), 2u);
    EXPECT_EQ(g.coeff({-3, 0}), FieldElem::from_int(F5, 2));
    EXPECT_TRUE(parse_poly("t1^-1 + 4*t1^-1", F5).is_zero());
    EXPECT_EQ(parse_poly(" t2 * 3 * t1^-1 - t1 ^ -1 * t2 ", F5), parse_poly("2*t1^-1*t2", F5));
    EXPECT_EQ(parse_poly("t1*t1*t2^-1*t2^-1", F5), parse_poly("t1^2*t2^-2", F5));

    const auto F4 = FieldCtx::make(2, 2);
    EXPECT_EQ(parse_poly("g^2*t1^-1", F4), parse_poly("g*t1^-1 + t1^-1", F4));
}

TEST(Parse, Errors) {
    const auto F5 = FieldCtx::make(5, 1);
    EXPECT_THROW(parse_poly("", F5), ParseError);
    EXPECT_THROW(parse_poly("t1^-1 +", F5), ParseError);
    EXPECT_THROW(parse_poly("t3", F5), ParseError);
    EXPECT_THROW(parse_poly("g*t1", F5), ParseError);
    EXPECT_THROW(parse_poly("t1^99999999", F5), ParseError);
    try {
        parse_poly("t1^-1 + x", F5);
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.position(), 8u);
    }
}

TEST(Parse, RoundTripOnCorpus) {
    corpus::Params p;
    p.kind = corpus::Kind::Poly;
    for (std::size_t i = 0; i < 300; ++i) {
        const auto in = corpus::poly_input(p, i);
        const auto F = gf::parse_field_spec(in.field);
        const auto f = parse_poly(in.expr, F);
        EXPECT_EQ(f.to_string(), in.expr);
        EXPECT_EQ(parse_poly(f.to_string(), F), f);
    }
    std::mt19937_64 rng(3);
    const auto F9 = FieldCtx::make(3, 2);
    for (int i = 0; i < 200; ++i) {
        const auto f = report::random_poly(rng, F9, PointType::II, 6, 5);
        EXPECT_EQ(parse_poly(f.to_string(), F9), f);
    }
}

TEST(Report, Examples) {
    report::InputSpec spec{"3^1", PointType::II, "t1^-2*t2", {}, 1};
    auto r = report::run_report(spec);
    EXPECT_EQ(r.base.trace.total, 2);
    EXPECT_EQ(r.base.sim.r_x, 2);
    EXPECT_EQ(r.base.kato_bound, 2);
    EXPECT_TRUE(report::all_pass(report::verdicts(r)));

    r = report::run_report({"5^1", PointType::I, "t1^-1", {}, 1});
    EXPECT_EQ(r.base.trace.total, 0);
    EXPECT_EQ(r.base.sim.r_x, 0);
    EXPECT_TRUE(r.base.sim.tree.clean);

    for (const char* field : {"2^1", "3^2", "7^1"}) {
        r = report::run_report({field, PointType::II, "0", {}, 4});
        EXPECT_TRUE(r.base.rep.pg.empty());
        EXPECT_EQ(r.base.sw1 + r.base.sw2 + r.base.swE, 0);
        EXPECT_EQ(r.base.trace.total, 0);
        EXPECT_EQ(r.base.sim.r_x, 0);
        EXPECT_EQ(r.base.kato_bound, 0);
        EXPECT_TRUE(report::all_pass(report::verdicts(r)));
    }

    EXPECT_THROW(report::run_report({"4^1", PointType::II, "t1", {}, 1}), report::StageError);
    EXPECT_THROW(report::run_report({"3^1", PointType::I, "t2^-1", {}, 1}), report::StageError);
}

TEST(Report, JsonIsPureFunctionOfInput) {
    report::InputSpec spec{"2^1", PointType::II, "t1^-3*t2^6 + t1^-3*t2^3 + t1^-1*t2^-1", {}, 9};
    const auto a = report::to_json(report::run_report(spec)).dump();
    const auto b = report::to_json(report::run_report(spec)).dump();
    EXPECT_EQ(a, b);
    const auto j = report::json::parse(a);
    EXPECT_EQ(j["invariants"]["simulation"]["r_x"], report::run_report(spec).base.sim.r_x);
}

TEST(Corpus, Deterministic) {
    corpus::Params p;
    p.count = 1000;
    const auto first = corpus::corpus_run(p).dump();
    p.threads = 1;
    EXPECT_EQ(first, corpus::corpus_run(p).dump());
    const auto j = report::json::parse(first);
    EXPECT_EQ(j["checks"]["closed_form"]["pass"], 1000);
    EXPECT_EQ(j["checks"]["ess_invariance"]["pass"], 1000);

    corpus::Params q;
    q.kind = corpus::Kind::Poly;
    q.count = 30;
    EXPECT_EQ(corpus::corpus_run(q).dump(), corpus::corpus_run(q).dump());
}

TEST(Corpus, MutantIsCaught) {
    corpus::Params p;
    p.mutant = true;
    const auto j = corpus::corpus_run(p);
    EXPECT_FALSE(j["pass"].get<bool>());
    EXPECT_GT(j["checks"]["closed_form"]["fail"].get<int>(), 0);
    const std::string cx = j["counterexamples"]["closed_form"]["minimized"];
    EXPECT_EQ(cx.substr(0, cx.find(' ')), "((0,0),(1,2))");
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(run_cli("report --field 3^1 --type II 't1^-2*t2'"), 0);
    EXPECT_EQ(run_cli("report --field 3^1 --type II --json --mode sweep 't1^-2*t2'"), 0);
    EXPECT_EQ(run_cli("report --field 5^1 --type I 't1^-1'"), 2);
    EXPECT_EQ(run_cli("report --field 3^1 't1^-1 +'"), 1);
    EXPECT_EQ(run_cli("report --field 6^1 't1'"), 1);
    EXPECT_EQ(run_cli("simulate --field 2^1 't1^-2*t2'"), 0);
    EXPECT_EQ(run_cli("corpus --kind staircase --count 50 --mutant"), 2);
    EXPECT_EQ(run_cli(std::string("euler ") + RAMIFY_SAMPLES + "/p2_line.json"), 0);
    EXPECT_EQ(run_cli(std::string("euler ") + RAMIFY_SAMPLES + "/p2_two_lines.json"), 0);
    EXPECT_EQ(run_cli("bogus"), 1);
}

TEST(Cli, DotExport) {
    const std::string path = ::testing::TempDir() + "ramify_tree.dot";
    ASSERT_EQ(run_cli("simulate --field 3^1 --dot " + path + " 't1^-2*t2'"), 0);
    std::ifstream in(path);
    const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    EXPECT_NE(text.find("digraph blowup"), std::string::npos);
    EXPECT_NE(text.find("x/A"), std::string::npos);
    const auto root = report::run_report({"3^1", PointType::II, "t1^-2*t2", {}, 1}).base.sim.tree;
    EXPECT_EQ(text, report::to_dot(root));
}
