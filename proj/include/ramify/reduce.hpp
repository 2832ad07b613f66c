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
 * @file reduce.hpp
 * @brief Artin-Schreier reduction: beta(h) = h^p - h, good representatives, Swan conductors.
 */

#ifndef RAMIFY_REDUCE_HPP
#define RAMIFY_REDUCE_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "gf.hpp"
#include "laurent.hpp"
#include "polygon.hpp"

namespace ramify::reduce {

inline LaurentPoly beta(const LaurentPoly& h) { return h.frobenius() - h; }

/**
 * A representative g of f modulo beta(K) whose corners avoid pZ^2 (except (0,0)).
 *
 * Invariant: f - g - beta(h) == constant_shift, a constant. Constants are
 * Artin-Schreier trivial over the algebraic closure, so they are dropped from f
 * and the constant 1 is put back only when no corner would otherwise lie in
 * a >= 0, b <= 0.
 */
struct GoodRep {
    LaurentPoly g;
    LaurentPoly h;
    StairSeq pg;
    bool quadrant_ok = false;
    bool constant_added = false;
    gf::FieldElem constant_shift;
    unsigned reductions = 0;
};

inline GoodRep good_rep(const LaurentPoly& f) {
    const auto& ctx = f.field();
    const std::int64_t p = ctx->characteristic();
    GoodRep r{f.without_constant(), LaurentPoly(ctx), {}, false, false, f.coeff({0, 0}), 0};

    // Outermost pole first; every step lowers sum(|m| + |n|) over the support.
    while (true) {
        const StairSeq corners = laurent::min_corners(r.g);
        std::optional<Corner> target;
        for (const auto& c : corners.points()) {
            if (c.a == 0 && c.b == 0) continue;
            if (c.a % p == 0 && c.b % p == 0 && (!target || c.a > target->a)) target = c;
        }
        if (!target) {
            r.pg = corners;
            break;
        }
        const Exponent e{-target->a, target->b};
        const gf::FieldElem root = r.g.coeff(e).pth_root();
        const Exponent reduced{e.m / p, e.n / p};
        r.g.add_term(e, -r.g.coeff(e));
        r.g.add_term(reduced, root);
        r.h.add_term(reduced, root);
        ++r.reductions;
    }

    r.quadrant_ok = polygon::quadrant_ok(r.pg);
    if (!r.quadrant_ok && !r.pg.empty()) {
        const auto one = gf::FieldElem::one(ctx);
        r.g.add_term({0, 0}, one);
        r.constant_shift -= one;
        r.constant_added = true;
        r.pg = laurent::min_corners(r.g);
        r.quadrant_ok = polygon::quadrant_ok(r.pg);
    }
    return r;
}

/// f - g - beta(h) is the recorded constant.
inline bool witness_holds(const LaurentPoly& f, const GoodRep& r) {
    LaurentPoly rest = f - r.g - beta(r.h);
    rest.add_term({0, 0}, -r.constant_shift);
    return rest.terms().empty();
}

enum class SwanDivisor { T1, T2, E };

inline std::string to_string(SwanDivisor d) {
    switch (d) {
        case SwanDivisor::T1: return "T1";
        case SwanDivisor::T2: return "T2";
        default: return "E";
    }
}

struct SwanReport {
    SwanDivisor divisor;
    std::int64_t value;
    unsigned reductions_applied;
};

namespace details {

// Swan conductor along t1 = 0: while the pole order is divisible by p and the leading
// coefficient (a Laurent polynomial in t2) is a p-th power, strip it with beta.
inline SwanReport swan_t1(LaurentPoly g, SwanDivisor tag) {
    const std::int64_t p = g.field()->characteristic();
    unsigned count = 0;
    while (true) {
        const auto col = laurent::leading_column(g, Divisor::T1);
        if (!col || col->index >= 0) return {tag, 0, count};
        bool pth_power = (-col->index) % p == 0;
        for (const auto& [n, c] : col->coeffs) pth_power = pth_power && n % p == 0;
        if (!pth_power) return {tag, -col->index, count};
        LaurentPoly phi(g.field());
        for (const auto& [n, c] : col->coeffs) phi.add_term({col->index / p, n / p}, c.pth_root());
        g -= beta(phi);
        ++count;
    }
}

}  // namespace details

inline SwanReport swan(const LaurentPoly& f, Divisor d) {
    return d == Divisor::T1 ? details::swan_t1(f, SwanDivisor::T1)
                            : details::swan_t1(laurent::swapped(f), SwanDivisor::T2);
}

/// Swan conductor along the exceptional divisor of the blow-up at the origin, read in chart A.
inline SwanReport swan_exceptional(const LaurentPoly& f) {
    return details::swan_t1(laurent::substitute_chart(f, Chart::A), SwanDivisor::E);
}

/// Same quantity read in chart B, where the exceptional divisor is v = 0.
inline SwanReport swan_exceptional_chart_b(const LaurentPoly& f) {
    return details::swan_t1(laurent::swapped(laurent::substitute_chart(f, Chart::B)), SwanDivisor::E);
}

inline bool is_clean(const LaurentPoly& f, PointType t) { return polygon::is_clean_shape(good_rep(f).pg, t); }

}  // namespace ramify::reduce

#endif  // RAMIFY_REDUCE_HPP
