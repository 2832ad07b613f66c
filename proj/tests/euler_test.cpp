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

#include <algorithm>
#include <numeric>
#include <random>

#include "ramify/euler.hpp"

using namespace ramify::euler;

TEST(Euler, Examples) {
    EXPECT_EQ(euler_delta({{{"L", 0}}, {{1}}, {-2}, 0}).delta, 0);
    const auto one = euler_delta({{{"L", 2}}, {{1}}, {-3}, 0});
    EXPECT_EQ(one.sw_self, 4);
    EXPECT_EQ(one.sw_klog, -6);
    EXPECT_EQ(one.delta, -2);
    EXPECT_EQ(euler_delta({{{"D1", 1}, {"D2", 1}}, {{0, 1}, {1, 0}}, {0, 0}, 2}).delta, 0);
}

TEST(Euler, Validation) {
    EXPECT_THROW(euler_delta({{{"A", 1}, {"B", 1}}, {{0, 1}, {2, 0}}, {0, 0}, 0}), ConfigError);
    EXPECT_THROW(euler_delta({{{"A", 1}}, {{0, 1}}, {0}, 0}), ConfigError);
    EXPECT_THROW(euler_delta({{{"A", 1}}, {{0}}, {0, 1}, 0}), ConfigError);
    EXPECT_THROW(euler_delta({{{"A", -1}}, {{0}}, {0}, 0}), ConfigError);
}

TEST(Euler, BilinearAndSymmetric) {
    std::mt19937_64 rng(13);
    std::uniform_int_distribution<int> v(-4, 4), s(0, 5), n(1, 5);
    for (int it = 0; it < 300; ++it) {
        const int k = n(rng);
        SurfaceConfig cfg;
        cfg.intersections.assign(k, std::vector<std::int64_t>(k, 0));
        for (int i = 0; i < k; ++i) {
            cfg.components.push_back({"D" + std::to_string(i), s(rng)});
            cfg.klog.push_back(v(rng));
            for (int j = 0; j <= i; ++j) cfg.intersections[i][j] = cfg.intersections[j][i] = v(rng);
        }
        cfg.r_sum = s(rng);
        const auto base = euler_delta(cfg);

        const std::int64_t c = s(rng);
        SurfaceConfig scaled = cfg;
        for (auto& comp : scaled.components) comp.sw *= c;
        const auto sr = euler_delta(scaled);
        EXPECT_EQ(sr.sw_self, c * c * base.sw_self);
        EXPECT_EQ(sr.sw_klog, c * base.sw_klog);

        std::vector<int> perm(k);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        SurfaceConfig permuted = cfg;
        for (int i = 0; i < k; ++i) {
            permuted.components[i] = cfg.components[perm[i]];
            permuted.klog[i] = cfg.klog[perm[i]];
            for (int j = 0; j < k; ++j) permuted.intersections[i][j] = cfg.intersections[perm[i]][perm[j]];
        }
        EXPECT_EQ(euler_delta(permuted).delta, base.delta);
    }
}
