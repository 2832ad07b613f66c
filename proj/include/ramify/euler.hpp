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

/**
 * @file euler.hpp
 * @brief Global Euler characteristic change from intersection data:
 *        delta = (Sw, Sw) + (Sw, K^log) - sum_x r_x.
 */

#ifndef RAMIFY_EULER_HPP
#define RAMIFY_EULER_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ramify::euler {

class ConfigError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

struct Component {
    std::string name;
    std::int64_t sw = 0;
};

struct SurfaceConfig {
    std::vector<Component> components;
    std::vector<std::vector<std::int64_t>> intersections;
    std::vector<std::int64_t> klog;
    std::int64_t r_sum = 0;

    void validate() const {
        const std::size_t n = components.size();
        if (intersections.size() != n) throw ConfigError("intersection matrix must have one row per component");
        for (const auto& row : intersections)
            if (row.size() != n) throw ConfigError("intersection matrix must be square");
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < i; ++j)
                if (intersections[i][j] != intersections[j][i])
                    throw ConfigError("intersection matrix is not symmetric at (" + std::to_string(i) + "," + std::to_string(j) + ")");
        if (klog.size() != n) throw ConfigError("klog must have one entry per component");
        for (const auto& c : components)
            if (c.sw < 0) throw ConfigError("Swan conductor of " + c.name + " is negative");
        if (r_sum < 0) throw ConfigError("r_sum must be nonnegative");
    }
};

struct EulerReport {
    std::int64_t sw_self = 0;
    std::int64_t sw_klog = 0;
    std::int64_t delta = 0;
};

inline EulerReport euler_delta(const SurfaceConfig& cfg) {
    cfg.validate();
    EulerReport r;
    const std::size_t n = cfg.components.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) r.sw_self += cfg.components[i].sw * cfg.components[j].sw * cfg.intersections[i][j];
        r.sw_klog += cfg.components[i].sw * cfg.klog[i];
    }
    r.delta = r.sw_self + r.sw_klog - cfg.r_sum;
    return r;
}

}  // namespace ramify::euler

#endif  // RAMIFY_EULER_HPP
