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

#include "ramify/parse.hpp"
#include "ramify/reduce.hpp"

using namespace ramify;
using namespace ramify::reduce;
using gf::FieldCtx;
using gf::FieldElem;

namespace {

LaurentPoly P(const std::string& s, const gf::FieldRef& F) { return parse_poly(s, F); }

LaurentPoly random_poly(std::mt19937_64& rng, const gf::FieldRef& F, int terms, int pole) {
    std::uniform_int_distribution<int> ed(-pole, 0);
    std::uniform_int_distribution<std::uint64_t> cd(1, F->order() - 1);
    LaurentPoly f(F);
    for (int i = 0; i < terms; ++i) f.add_term({ed(rng), ed(rng)}, FieldElem::from_code(F, cd(rng)));
    return f;
}

// Pole order along t1, an upper bound for the Swan conductor there.
std::int64_t t1_pole(const LaurentPoly& f) {
    const auto v = laurent::valuation_along(f, Divisor::T1);
    return v && *v < 0 ? -*v : 0;
}

}  // namespace

TEST(Beta, Examples) {
    const auto F3 = FieldCtx::make(3, 1);
    EXPECT_EQ(beta(P("t1^-1", F3)), P("t1^-3 - t1^-1", F3));
    const auto F4 = FieldCtx::make(2, 2);
    // g^2 = g + 1 in F4
    EXPECT_EQ(beta(P("g*t2^-1", F4)), P("g*t2^-2 + t2^-2 + g*t2^-1", F4));
    EXPECT_TRUE(beta(LaurentPoly(F3)).is_zero());
}

TEST(GoodRep, Examples) {
    const auto F2 = FieldCtx::make(2, 1);
    auto r = good_rep(P("t1^-2", F2));
    EXPECT_EQ(r.g, P("t1^-1", F2));
    EXPECT_EQ(r.h, P("t1^-1", F2));
    EXPECT_EQ(r.pg, StairSeq({{1, 0}}));
    EXPECT_FALSE(r.constant_added);

    const auto F3 = FieldCtx::make(3, 1);
    r = good_rep(P("t1^-3*t2^-3", F3));
    EXPECT_EQ(r.g, P("t1^-1*t2^-1", F3));
    EXPECT_EQ(r.pg, StairSeq({{1, -1}}));
    EXPECT_TRUE(r.quadrant_ok);

    r = good_rep(P("t1^-2*t2", F3));
    EXPECT_TRUE(r.constant_added);
    EXPECT_EQ(r.g, P("t1^-2*t2 + 1", F3));
    EXPECT_EQ(r.pg, StairSeq({{0, 0}, {2, 1}}));
    EXPECT_TRUE(witness_holds(P("t1^-2*t2", F3), r));

    r = good_rep(P("2 + t1^-1", F3));
    EXPECT_EQ(r.g, P("t1^-1", F3));
    EXPECT_EQ(r.constant_shift, FieldElem::from_int(F3, 2));
    EXPECT_TRUE(witness_holds(P("2 + t1^-1", F3), r));

    EXPECT_TRUE(good_rep(LaurentPoly(F3)).pg.empty());
}

TEST(Swan, Examples) {
    const auto F5 = FieldCtx::make(5, 1);
    EXPECT_EQ(swan(P("t1^-3 + t2^-2", F5), Divisor::T1).value, 3);
    EXPECT_EQ(swan(P("t1^-3 + t2^-2", F5), Divisor::T2).value, 2);
    const auto F2 = FieldCtx::make(2, 1);
    const auto s = swan(P("t1^-2", F2), Divisor::T1);
    EXPECT_EQ(s.value, 1);
    EXPECT_EQ(s.reductions_applied, 1u);
    EXPECT_EQ(swan(P("t1^-4*t2 + t1^-1", F2), Divisor::T1).value, 4);
    EXPECT_EQ(swan(P("t1^-4 + t1^-2", F2), Divisor::T1).value, 0);
    EXPECT_EQ(swan(P("t1^2", F2), Divisor::T1).value, 0);
}

TEST(Swan, Exceptional) {
    const auto F2 = FieldCtx::make(2, 1);
    EXPECT_EQ(swan_exceptional(P("1 + t1^-2*t2", F2)).value, 1);
    EXPECT_EQ(swan_exceptional(P("1 + t1^-1*t2^2", F2)).value, 0);
    EXPECT_EQ(swan_exceptional(P("t1^-1*t2^-1", F2)).value, 2);
    EXPECT_EQ(swan_exceptional_chart_b(P("t1^-1*t2^-1", F2)).value, 2);
}

TEST(Clean, Examples) {
    const auto F3 = FieldCtx::make(3, 1);
    EXPECT_TRUE(is_clean(P("t1^-2*t2^-1", F3), PointType::II));
    EXPECT_FALSE(is_clean(P("t1^-2*t2", F3), PointType::II));
    EXPECT_TRUE(is_clean(P("t1^-1", F3), PointType::I));
    EXPECT_TRUE(is_clean(P("t2", F3), PointType::I));
}

TEST(GoodRep, Properties) {
    std::mt19937_64 rng(41);
    for (auto [p, k] : std::vector<std::pair<std::uint32_t, unsigned>>{{2, 1}, {3, 1}, {5, 1}, {2, 2}, {3, 2}}) {
        const auto F = FieldCtx::make(p, k);
        for (int i = 0; i < 200; ++i) {
            const auto f = random_poly(rng, F, 1 + i % 5, 9);
            const auto r = good_rep(f);
            ASSERT_TRUE(witness_holds(f, r)) << f.to_string();
            EXPECT_TRUE(r.quadrant_ok || r.pg.empty()) << f.to_string();
            for (const auto& c : r.pg.points())
                if (c.a != 0 || c.b != 0) EXPECT_FALSE(c.a % p == 0 && c.b % p == 0) << f.to_string();
            for (const auto& [e, c] : r.h.terms()) {
                EXPECT_LE(e.m, 0);
                EXPECT_LE(e.n, 0);
            }

            // Idempotent on the representative.
            const auto again = good_rep(r.g);
            EXPECT_EQ(again.pg, r.pg) << f.to_string();

            // Invariant under f -> f + beta(h) for h with nonpositive exponents.
            const auto h = random_poly(rng, F, 2, 3);
            EXPECT_EQ(good_rep(f + beta(h)).pg, r.pg) << f.to_string() << " | " << h.to_string();

            // Swan along each boundary divisor is read off the corners.
            std::int64_t a_max = 0, b_min = 0;
            for (const auto& c : r.pg.points()) {
                a_max = std::max(a_max, c.a);
                b_min = std::min(b_min, c.b);
            }
            EXPECT_EQ(swan(f, Divisor::T1).value, a_max) << f.to_string();
            EXPECT_EQ(swan(f, Divisor::T2).value, -b_min) << f.to_string();
            EXPECT_LE(swan(f, Divisor::T1).value, t1_pole(f));

            // The two charts agree on the exceptional divisor.
            EXPECT_EQ(swan_exceptional(f).value, swan_exceptional_chart_b(f).value) << f.to_string();
            if (!r.pg.empty()) {
                std::int64_t sh = 0;
                for (const auto& c : r.pg.points()) sh = std::max(sh, c.a - c.b);
                EXPECT_EQ(swan_exceptional(f).value, sh) << f.to_string();
                const std::int64_t e = polygon::e_value(r.pg);
                EXPECT_EQ(e, a_max + (-b_min) - sh) << f.to_string();
            }
        }
    }
}
