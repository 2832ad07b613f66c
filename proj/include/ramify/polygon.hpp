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
 * @file polygon.hpp
 * @brief Integer combinatorics of pole staircases.
 *
 * A staircase ((a_0,b_0),...,(a_k,b_k)) lists the corners of the support of a
 * local equation in (pole order along t1, exponent of t2) coordinates, strictly
 * increasing in both entries. This header computes its essential vertices (lower
 * convex hull), the Area functional, the conductor drop e and its contribution mu,
 * the recursive invariant r' with a full trace, its closed form, the depth measure
 * and the upper bound for r_x. Nothing here touches field arithmetic.
 */

#ifndef RAMIFY_POLYGON_HPP
#define RAMIFY_POLYGON_HPP

#include <algorithm>
#include <compare>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ramify {

class PolygonError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// (a, b) <-> monomial t1^{-a} t2^{b}.
struct Corner {
    std::int64_t a = 0;
    std::int64_t b = 0;
    friend auto operator<=>(const Corner&, const Corner&) = default;
};

/// Number of boundary branches through the point: Case I (one) or Case II (two).
enum class PointType : int { I = 1, II = 2 };

inline int as_int(PointType t) { return static_cast<int>(t); }

inline std::string to_string(PointType t) { return t == PointType::I ? "I" : "II"; }

class StairSeq {
   public:
    StairSeq() = default;

    /// Validating constructor: a and b strictly increasing.
    explicit StairSeq(std::vector<Corner> pts) : pts_(std::move(pts)) {
        for (std::size_t i = 1; i < pts_.size(); ++i)
            if (pts_[i].a <= pts_[i - 1].a || pts_[i].b <= pts_[i - 1].b)
                throw PolygonError("staircase must be strictly increasing in both coordinates: " + to_string());
    }

    StairSeq(std::initializer_list<Corner> pts) : StairSeq(std::vector<Corner>(pts)) {}

    /// No monotonicity check; only for deliberately malformed inputs (mutation tests).
    static StairSeq unchecked(std::vector<Corner> pts) {
        StairSeq s;
        s.pts_ = std::move(pts);
        return s;
    }

    const std::vector<Corner>& points() const { return pts_; }
    std::size_t size() const { return pts_.size(); }
    bool empty() const { return pts_.empty(); }
    const Corner& operator[](std::size_t i) const { return pts_[i]; }
    const Corner& front() const { return pts_.front(); }
    const Corner& back() const { return pts_.back(); }

    friend bool operator==(const StairSeq&, const StairSeq&) = default;

    std::string to_string() const {
        std::string s = "(";
        for (std::size_t i = 0; i < pts_.size(); ++i) {
            if (i) s += ",";
            s += "(" + std::to_string(pts_[i].a) + "," + std::to_string(pts_[i].b) + ")";
        }
        return s + ")";
    }

   private:
    std::vector<Corner> pts_;
};

namespace polygon {

namespace details {
inline void require_nonempty(const StairSeq& A, const char* op) {
    if (A.empty()) throw PolygonError(std::string(op) + ": empty staircase");
}
}  // namespace details

/// Some vertex lies in Z_{>=0} x Z_{<=0}.
inline bool quadrant_ok(const StairSeq& A) {
    return std::any_of(A.points().begin(), A.points().end(), [](const Corner& c) { return c.a >= 0 && c.b <= 0; });
}

/// Essential vertices: from the current vertex, jump to the farthest index of minimal slope.
inline StairSeq ess(const StairSeq& A) {
    details::require_nonempty(A, "ess");
    const auto& P = A.points();
    std::vector<Corner> out{P[0]};
    std::size_t i = 0;
    while (i + 1 < P.size()) {
        std::size_t best = i + 1;
        for (std::size_t j = i + 2; j < P.size(); ++j) {
            // slope(j) <= slope(best), denominators positive
            const std::int64_t lhs = (P[j].b - P[i].b) * (P[best].a - P[i].a);
            const std::int64_t rhs = (P[best].b - P[i].b) * (P[j].a - P[i].a);
            if (lhs <= rhs) best = j;
        }
        out.push_back(P[best]);
        i = best;
    }
    return StairSeq(std::move(out));
}

/// Sum_{t<k} (a_{t+1} - a_t)(b_{t+1} + b_t - 2 b_0): twice the area above the baseline b = b_0.
inline std::int64_t area(const StairSeq& A) {
    std::int64_t s = 0;
    const auto& P = A.points();
    for (std::size_t t = 0; t + 1 < P.size(); ++t) s += (P[t + 1].a - P[t].a) * (P[t + 1].b + P[t].b - 2 * P[0].b);
    return s;
}

inline std::int64_t depth(const StairSeq& A) {
    if (A.empty()) return 0;
    return A.back().a - A.front().a + A.back().b - A.front().b;
}

/// e = max(a_k, 0) + max(-b_0, 0) - max(max_i(a_i - b_i), 0). Not clamped.
inline std::int64_t e_value(const StairSeq& A) {
    details::require_nonempty(A, "e_value");
    std::int64_t diff = std::numeric_limits<std::int64_t>::min();
    for (const auto& c : A.points()) diff = std::max(diff, c.a - c.b);
    return std::max<std::int64_t>(A.back().a, 0) + std::max<std::int64_t>(-A.front().b, 0) -
           std::max<std::int64_t>(diff, 0);
}

inline std::int64_t mu(std::int64_t e, PointType t) {
    if (e < 0) throw PolygonError("mu: negative e = " + std::to_string(e));
    return t == PointType::I ? e * (e - 1) : e * e;
}

/// Which reading of the first index set to use. Printed is the literal (inconsistent) variant, kept
/// only so the corpus runner can demonstrate that it breaks the closed form.
enum class JaRule { Corrected, Printed };

struct JSets {
    std::vector<std::size_t> ja;
    std::vector<std::size_t> jb;
};

/**
 * J_a = { j : b_j - a_j < min_{j<i<=k}(b_i - a_i) }   (empty min = +inf, so k is in J_a)
 * J_b = { j : a_j - b_j > max_{0<=i<j}(a_i - b_i) }   (empty max = -inf, so 0 is in J_b)
 *
 * These are exactly the indices whose images under (a, b - a) and (a - b, b) stay
 * minimal corners of the transformed support.
 */
inline JSets j_sets(const StairSeq& A, JaRule rule = JaRule::Corrected) {
    const auto& P = A.points();
    const std::size_t n = P.size();
    JSets J;
    if (rule == JaRule::Corrected) {
        std::int64_t suffix_min = std::numeric_limits<std::int64_t>::max();
        for (std::size_t j = n; j-- > 0;) {
            const std::int64_t v = P[j].b - P[j].a;
            if (v < suffix_min) J.ja.push_back(j);
            suffix_min = std::min(suffix_min, v);
        }
    } else {
        std::int64_t suffix_max = std::numeric_limits<std::int64_t>::min();
        for (std::size_t j = n; j-- > 0;) {
            const std::int64_t v = P[j].b - P[j].a;
            if (v < suffix_max) J.ja.push_back(j);
            suffix_max = std::max(suffix_max, v);
        }
    }
    std::reverse(J.ja.begin(), J.ja.end());
    std::int64_t prefix_max = std::numeric_limits<std::int64_t>::min();
    for (std::size_t j = 0; j < n; ++j) {
        const std::int64_t v = P[j].a - P[j].b;
        if (v > prefix_max) J.jb.push_back(j);
        prefix_max = std::max(prefix_max, v);
    }
    return J;
}

/// (a_j, b_j - a_j)_{j in J}: the staircase seen from the chart (t1, t2) = (uv, v).
inline StairSeq shear_b(const StairSeq& A, const std::vector<std::size_t>& J, bool validate = true) {
    std::vector<Corner> out;
    for (auto j : J) out.push_back({A[j].a, A[j].b - A[j].a});
    return validate ? StairSeq(std::move(out)) : StairSeq::unchecked(std::move(out));
}

/// (a_j - b_j, b_j)_{j in J}: the staircase seen from the chart (t1, t2) = (u, uv).
inline StairSeq shear_a(const StairSeq& A, const std::vector<std::size_t>& J, bool validate = true) {
    std::vector<Corner> out;
    for (auto j : J) out.push_back({A[j].a - A[j].b, A[j].b});
    return validate ? StairSeq(std::move(out)) : StairSeq::unchecked(std::move(out));
}

struct RPrimeStep {
    StairSeq input;
    PointType type;
    std::int64_t e;
    std::int64_t mu;
    std::vector<std::size_t> ja;
    std::vector<std::size_t> jb;
    unsigned level;
};

struct RPrimeTrace {
    std::int64_t total = 0;
    std::vector<RPrimeStep> steps;
};

namespace details {

inline void check_descent(const StairSeq& parent, const StairSeq& child) {
    const auto pk = std::make_pair(parent.size(), depth(parent));
    const auto ck = std::make_pair(child.size(), depth(child));
    if (!(ck < pk))
        throw PolygonError("r' recursion does not descend: " + parent.to_string() + " -> " + child.to_string());
}

inline std::int64_t r_prime_rec(const StairSeq& A, PointType t, JaRule rule, RPrimeTrace* trace, unsigned level) {
    if (A.size() <= 1) return 0;
    const std::int64_t e = e_value(A);
    const std::int64_t m = mu(e, t);
    JSets J = j_sets(A, rule);
    const bool strict = rule == JaRule::Corrected;
    const StairSeq first = shear_b(A, J.ja, strict);
    const StairSeq second = shear_a(A, J.jb, strict);
    check_descent(A, first);
    check_descent(A, second);
    if (trace) trace->steps.push_back({A, t, e, m, J.ja, J.jb, level});
    return m + r_prime_rec(first, PointType::II, rule, trace, level + 1) +
           r_prime_rec(second, t, rule, trace, level + 1);
}

}  // namespace details

/// r'_t with the full per-step trace. Empty and singleton staircases give 0.
inline RPrimeTrace r_prime(const StairSeq& A, PointType t) {
    RPrimeTrace trace;
    trace.total = details::r_prime_rec(A, t, JaRule::Corrected, &trace, 0);
    return trace;
}

inline std::int64_t r_prime_total(const StairSeq& A, PointType t, JaRule rule = JaRule::Corrected) {
    return details::r_prime_rec(A, t, rule, nullptr, 0);
}

/// Area(ess(A)) + (t - 2)(a_k - a_0).
inline std::int64_t r_prime_closed(const StairSeq& A, PointType t) {
    if (A.empty()) return 0;
    return area(ess(A)) + (as_int(t) - 2) * (A.back().a - A.front().a);
}

/**
 * Upper bound for r_x, with (A_0, B_0) the first vertex and (A_k, B_k) the last:
 *   type I : A_k (B_k - 1)
 *   type II: A_k (B_k - B_0) + (-B_0)(A_k - A_0)
 */
inline std::int64_t kato_bound(const StairSeq& A, PointType t) {
    if (A.empty()) return 0;
    const auto [A0, B0] = A.front();
    const auto [Ak, Bk] = A.back();
    if (t == PointType::I) return Ak * (Bk - 1);
    return Ak * (Bk - B0) + (-B0) * (Ak - A0);
}

/// Type I: ((a0,b0)) or ((a0,b0),(a1,b0+1)). Type II: ((a0,b0)). Empty counts as clean.
inline bool is_clean_shape(const StairSeq& A, PointType t) {
    if (A.size() <= 1) return true;
    return t == PointType::I && A.size() == 2 && A[1].b == A[0].b + 1;
}

}  // namespace polygon
}  // namespace ramify

#endif  // RAMIFY_POLYGON_HPP
