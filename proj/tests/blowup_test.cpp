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

#include <random>

#include "ramify/blowup.hpp"
#include "ramify/parse.hpp"

using namespace ramify;
using namespace ramify::blowup;
using gf::FieldCtx;
using gf::FieldElem;

namespace {

LaurentPoly P(const std::string& s, const gf::FieldRef& F) { return parse_poly(s, F); }

}  // namespace

TEST(Simulate, WorkedExample) {
    for (std::uint32_t p : {2u, 3u, 5u}) {
        const auto F = FieldCtx::make(p, 1);
        const auto res = simulate(P("t1^-2*t2", F), PointType::II);
        EXPECT_EQ(res.r_x, 2) << p;
        EXPECT_EQ(res.depth(), 2u);
        EXPECT_TRUE(res.flags.constant_added_anywhere);
        EXPECT_TRUE(res.good_regime());
        const auto& root = res.tree;
        EXPECT_EQ(root.pg, StairSeq({{0, 0}, {2, 1}}));
        EXPECT_EQ(root.e, 1);
        EXPECT_EQ(*root.sw1, 2);
        EXPECT_EQ(*root.sw2, 0);
        EXPECT_EQ(*root.swE, 1);
        ASSERT_EQ(root.children.size(), 2u);
        EXPECT_TRUE(root.children[0].clean);
        EXPECT_EQ(root.children[0].pg, StairSeq({{2, -1}}));
        EXPECT_FALSE(root.children[1].clean);
        EXPECT_EQ(root.children[1].pg, StairSeq({{0, 0}, {1, 1}}));
        EXPECT_EQ(root.children[1].e, 1);
        EXPECT_EQ(res.noncleans(), (std::set<std::string>{"x", "x/A"}));
    }
}

TEST(Simulate, TrivialCases) {
    const auto F = FieldCtx::make(5, 1);
    EXPECT_EQ(simulate(P("t1^-1", F), PointType::I).r_x, 0);
    EXPECT_EQ(simulate(LaurentPoly(F), PointType::II).r_x, 0);
    EXPECT_EQ(simulate(LaurentPoly(F), PointType::II).depth(), 0u);
}

TEST(ChildrenOf, Examples) {
    const auto F = FieldCtx::make(3, 1);
    Simulator sim;
    const auto kids = sim.children_of(P("1 + t1^-2*t2", F), PointType::II);
    ASSERT_EQ(kids.size(), 1u);
    EXPECT_EQ(kids[0].second, PointType::II);
    EXPECT_EQ(reduce::good_rep(kids[0].first).pg, StairSeq({{0, 0}, {1, 1}}));
    // Regular after chart A, but pg ((0,0),(1,2)) is not clean and chart B keeps ((0,0),(1,1)).
    const auto other = sim.children_of(P("1 + t1^-1*t2^2", F), PointType::II);
    ASSERT_EQ(other.size(), 1u);
    EXPECT_EQ(reduce::good_rep(other[0].first).pg, StairSeq({{0, 0}, {1, 1}}));
    EXPECT_TRUE(reduce::is_clean(laurent::substitute_chart(P("1 + t1^-1*t2^2", F), Chart::A), PointType::II));
}

TEST(NonCleansOnE, Examples) {
    const auto F2 = FieldCtx::make(2, 1);
    Simulator sim;
    EXPECT_TRUE(sim.candidates_on_E(P("1 + t1^-1*t2", F2)).empty());
    EXPECT_TRUE(sim.candidates_on_E(P("1 + t1*t2^-3", F2)).empty());
    const auto c = sim.candidates_on_E(P("1 + t1^-1*t2^2 + t1^-1*t2", F2));
    ASSERT_EQ(c.size(), 1u);
    EXPECT_TRUE(c[0].a.is_one());
    // v(v+1) at v = 1 becomes (w+1)w: one-step type I staircase, clean.
    EXPECT_EQ(reduce::good_rep(c[0].local).pg, StairSeq({{0, 0}, {1, 1}}));
    EXPECT_TRUE(sim.noncleans_on_E(P("1 + t1^-1*t2^2 + t1^-1*t2", F2)).empty());
}

TEST(NonCleansOnE, FindsCuspidalPoint) {
    // Leading coefficient (v+1)^3 over F_2 with pole order 3: the point v = 1 is non-clean.
    const auto F2 = FieldCtx::make(2, 1);
    Simulator sim;
    const auto f = P("t1^-3*t2^3 + t1^-3*t2^2 + t1^-3*t2 + t1^-3", F2);
    const auto pts = sim.noncleans_on_E(f);
    ASSERT_EQ(pts.size(), 1u);
    EXPECT_TRUE(pts[0].a.is_one());
    SimConfig sweep;
    sweep.mode = Mode::Sweep;
    sweep.sweep_degree = 3;
    Simulator sw(sweep);
    const auto spts = sw.noncleans_on_E(f);
    ASSERT_EQ(spts.size(), 1u);
    EXPECT_EQ(spts[0].a, pts[0].a);
}

TEST(NonCleansOnE, ExtensionRootsAreOrbits) {
    // v^2 + v + 1 has its roots in F_4; one orbit of size two.
    const auto F2 = FieldCtx::make(2, 1);
    Simulator sim;
    const auto c = sim.candidates_on_E(P("t1^-3*t2^2 + t1^-3*t2 + t1^-3 + t1^-1", F2));
    ASSERT_EQ(c.size(), 1u);
    EXPECT_EQ(c[0].orbit, 2u);
    EXPECT_EQ(c[0].a.field()->degree(), 2u);
}

TEST(Simulate, OffOriginContributionsAreWeighted) {
    const auto F2 = FieldCtx::make(2, 1);
    SimConfig cand;
    SimConfig sweep;
    sweep.mode = Mode::Sweep;
    sweep.sweep_degree = 2;
    const auto f = P("t1^-3*t2^6 + t1^-3*t2^3", F2);
    const auto a = simulate(f, PointType::II, cand);
    const auto b = simulate(f, PointType::II, sweep);
    EXPECT_EQ(a.r_x, b.r_x);
    EXPECT_EQ(a.noncleans(), b.noncleans());
}

TEST(Simulate, DepthCapCarriesPartialTree) {
    const auto F = FieldCtx::make(3, 1);
    SimConfig cfg;
    cfg.depth_cap = 1;
    try {
        simulate(P("t1^-2*t2", F), PointType::II, cfg);
        FAIL() << "expected SimulationError";
    } catch (const SimulationError& ex) {
        EXPECT_EQ(ex.partial_tree().label, "x");
        EXPECT_FALSE(ex.partial_tree().children.empty());
    }
}

TEST(Simulate, RandomInvariants) {
    std::mt19937_64 rng(77);
    for (std::uint32_t p : {2u, 3u, 5u}) {
        const auto F = FieldCtx::make(p, 1);
        std::uniform_int_distribution<int> ed(-5, 0), cd(1, static_cast<int>(p) - 1), nt(1, 3);
        for (int i = 0; i < 60; ++i) {
            LaurentPoly f(F);
            const int terms = nt(rng);
            for (int j = 0; j < terms; ++j) f.add_term({ed(rng), ed(rng)}, FieldElem::from_int(F, cd(rng)));
            const auto res = simulate(f, PointType::II);
            std::int64_t weighted = 0;
            std::function<void(const BlowupNode&, std::int64_t)> walk = [&](const BlowupNode& n, std::int64_t w) {
                EXPECT_EQ(n.mu, n.clean ? 0 : polygon::mu(n.e, n.t));
                if (n.clean) {
                    EXPECT_TRUE(n.children.empty());
                }
                EXPECT_TRUE(polygon::is_clean_shape(n.pg, n.t) == n.clean);
                weighted += w * n.mu;
                for (const auto& c : n.children) walk(c, w * c.orbit);
            };
            walk(res.tree, 1);
            EXPECT_EQ(weighted, res.r_x) << f.to_string();
            EXPECT_GE(res.r_x, 0);
        }
    }
}
