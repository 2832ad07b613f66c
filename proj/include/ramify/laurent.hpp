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
 * @file laurent.hpp
 * @brief Sparse bivariate Laurent polynomials sum c_{m,n} t1^m t2^n over F_{p^k}.
 *
 * Translating t2 -> t2 + a at a point a != 0 turns negative powers of t2 into
 * power series, which are kept only up to a budget. Such a polynomial carries an
 * UnknownRegion: a finite union of quadrants {m >= m0, n >= n0} whose
 * coefficients are not known. Queries that would need a coefficient inside the
 * region (corners, valuations, leading columns) throw PrecisionExceeded instead
 * of answering from incomplete data.
 */

#ifndef RAMIFY_LAURENT_HPP
#define RAMIFY_LAURENT_HPP

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gf.hpp"
#include "polygon.hpp"

namespace ramify {

class LaurentError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// A query needed a coefficient beyond the truncation order.
class PrecisionExceeded : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Exponent pair of t1^m t2^n.
struct Exponent {
    std::int64_t m = 0;
    std::int64_t n = 0;
    friend auto operator<=>(const Exponent&, const Exponent&) = default;
};

inline bool dominates(const Exponent& lo, const Exponent& hi) { return lo.m <= hi.m && lo.n <= hi.n; }

inline Corner to_corner(const Exponent& e) { return {-e.m, e.n}; }

enum class Divisor { T1, T2 };
/// Chart A: (t1, t2) = (u, uv). Chart B: (t1, t2) = (uv, v).
enum class Chart { A, B };

inline Exponent chart_map(const Exponent& e, Chart c) {
    return c == Chart::A ? Exponent{e.m + e.n, e.n} : Exponent{e.m, e.m + e.n};
}

struct PrecisionBudget {
    std::int64_t n_terms = 16;
};

/// Union of quadrants {m >= g.m, n >= g.n}, stored as an antichain of generators.
class UnknownRegion {
   public:
    bool empty() const { return gens_.empty(); }
    const std::vector<Exponent>& generators() const { return gens_; }

    bool contains(const Exponent& e) const {
        return std::any_of(gens_.begin(), gens_.end(), [&](const Exponent& g) { return dominates(g, e); });
    }

    void add(const Exponent& g) {
        if (contains(g)) return;
        std::erase_if(gens_, [&](const Exponent& h) { return dominates(g, h); });
        gens_.push_back(g);
        std::sort(gens_.begin(), gens_.end());
    }

    void merge(const UnknownRegion& o) {
        for (const auto& g : o.gens_) add(g);
    }

    /// Smallest quadrants containing the chart images.
    UnknownRegion charted(Chart c) const {
        UnknownRegion r;
        for (const auto& g : gens_) r.add(chart_map(g, c));
        return r;
    }

    friend bool operator==(const UnknownRegion&, const UnknownRegion&) = default;

   private:
    std::vector<Exponent> gens_;
};

class LaurentPoly {
   public:
    using Terms = std::map<Exponent, gf::FieldElem>;

    explicit LaurentPoly(gf::FieldRef ctx) : ctx_(std::move(ctx)) {}

    static LaurentPoly monomial(const gf::FieldElem& c, std::int64_t m, std::int64_t n) {
        LaurentPoly f(c.field());
        f.add_term({m, n}, c);
        return f;
    }
    static LaurentPoly constant(const gf::FieldElem& c) { return monomial(c, 0, 0); }

    const gf::FieldRef& field() const { return ctx_; }
    const Terms& terms() const { return terms_; }
    const UnknownRegion& unknown() const { return unknown_; }
    bool is_exact() const { return unknown_.empty(); }
    /// Zero as far as is known; a truncated polynomial with no known terms is not "zero".
    bool is_zero() const { return terms_.empty() && unknown_.empty(); }
    std::size_t size() const { return terms_.size(); }

    /// Adds c * t1^m t2^n. Contributions inside the unknown region are absorbed.
    void add_term(const Exponent& e, const gf::FieldElem& c) {
        if (!gf::same_field(c.field(), ctx_)) throw gf::ContextMismatch();
        if (c.is_zero() || unknown_.contains(e)) return;
        auto [it, fresh] = terms_.try_emplace(e, c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    gf::FieldElem coeff(const Exponent& e) const {
        if (unknown_.contains(e)) throw PrecisionExceeded("coefficient lies beyond the truncation order");
        auto it = terms_.find(e);
        return it == terms_.end() ? gf::FieldElem::zero(ctx_) : it->second;
    }

    void mark_unknown(const Exponent& g) {
        unknown_.add(g);
        std::erase_if(terms_, [&](const auto& kv) { return unknown_.contains(kv.first); });
    }

    LaurentPoly operator-() const {
        LaurentPoly r(ctx_);
        r.unknown_ = unknown_;
        for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
        return r;
    }

    LaurentPoly& operator+=(const LaurentPoly& o) {
        check(o);
        for (const auto& g : o.unknown_.generators()) mark_unknown(g);
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    LaurentPoly& operator-=(const LaurentPoly& o) { return *this += -o; }

    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }

    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
        a.check(b);
        if (!a.is_exact() || !b.is_exact()) throw LaurentError("product of truncated polynomials");
        LaurentPoly r(a.ctx_);
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) r.add_term({ea.m + eb.m, ea.n + eb.n}, ca * cb);
        return r;
    }

    LaurentPoly scaled(const gf::FieldElem& s) const {
        LaurentPoly r(ctx_);
        r.unknown_ = unknown_;
        for (const auto& [e, c] : terms_) r.add_term(e, c * s);
        return r;
    }

    /// f^p: Frobenius on coefficients, exponents times p.
    LaurentPoly frobenius() const {
        if (!is_exact()) throw LaurentError("frobenius of a truncated polynomial");
        const std::int64_t p = ctx_->characteristic();
        LaurentPoly r(ctx_);
        for (const auto& [e, c] : terms_) r.add_term({e.m * p, e.n * p}, c.frobenius());
        return r;
    }

    LaurentPoly embedded(const gf::Embedding& emb) const {
        if (!gf::same_field(emb.source(), ctx_)) throw gf::ContextMismatch();
        LaurentPoly r(emb.target());
        r.unknown_ = unknown_;
        for (const auto& [e, c] : terms_) r.terms_.emplace(e, emb(c));
        return r;
    }

    LaurentPoly without_constant() const {
        LaurentPoly r = *this;
        r.terms_.erase(Exponent{0, 0});
        return r;
    }

    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
        if (!gf::same_field(a.ctx_, b.ctx_) || !(a.unknown_ == b.unknown_) || a.terms_.size() != b.terms_.size())
            return false;
        auto ib = b.terms_.begin();
        for (auto ia = a.terms_.begin(); ia != a.terms_.end(); ++ia, ++ib)
            if (ia->first != ib->first || !(ia->second == ib->second)) return false;
        return true;
    }

    /// Human/grammar form, e.g. "2*t1^-3*t2^2 + g*t2^-1". Extension coefficients are split over the
    /// powers of g so that the output reparses. Truncation shows as "+ O(t1^m*t2^n)".
    std::string to_string() const {
        std::string out;
        auto append = [&](const std::string& term) { out += out.empty() ? term : " + " + term; };
        for (const auto& [e, c] : terms_) {
            std::string mono;
            auto factor = [&](const char* var, std::int64_t x) {
                if (x == 0) return;
                if (!mono.empty()) mono += "*";
                mono += var;
                if (x != 1) mono += "^" + std::to_string(x);
            };
            factor("t1", e.m);
            factor("t2", e.n);
            const auto& cs = c.coeffs();
            for (std::size_t i = cs.size(); i-- > 0;) {
                if (cs[i] == 0) continue;
                std::string term;
                if (cs[i] != 1 || (i == 0 && mono.empty())) term = std::to_string(cs[i]);
                if (i > 0) term += (term.empty() ? "" : "*") + std::string(i == 1 ? "g" : "g^" + std::to_string(i));
                if (!mono.empty()) term += (term.empty() ? "" : "*") + mono;
                append(term);
            }
        }
        for (const auto& g : unknown_.generators())
            append("O(t1^" + std::to_string(g.m) + "*t2^" + std::to_string(g.n) + ")");
        return out.empty() ? "0" : out;
    }

   private:
    void check(const LaurentPoly& o) const {
        if (!gf::same_field(ctx_, o.ctx_)) throw gf::ContextMismatch();
    }

    gf::FieldRef ctx_;
    Terms terms_;
    UnknownRegion unknown_;
};

namespace laurent {

/// C(n, k) mod p by Lucas' theorem.
inline std::uint32_t binomial_mod(std::uint64_t n, std::uint64_t k, std::uint32_t p) {
    if (k > n) return 0;
    std::uint64_t result = 1;
    while (n || k) {
        const std::uint64_t ni = n % p, ki = k % p;
        if (ki > ni) return 0;
        std::uint64_t num = 1, den = 1;
        for (std::uint64_t i = 0; i < ki; ++i) {
            num = num * ((ni - i) % p) % p;
            den = den * ((i + 1) % p) % p;
        }
        result = result * num % p * gf::details::inv_mod(static_cast<gf::Residue>(den), p) % p;
        n /= p;
        k /= p;
    }
    return static_cast<std::uint32_t>(result);
}

/// Throws unless every unknown quadrant sits above some known support point, i.e. the minimal
/// corners of the known part are the minimal corners of the full series.
inline void certify_corners(const LaurentPoly& f) {
    for (const auto& g : f.unknown().generators()) {
        const bool covered = std::any_of(f.terms().begin(), f.terms().end(),
                                         [&](const auto& kv) { return dominates(kv.first, g); });
        if (!covered) throw PrecisionExceeded("corners not determined at current precision");
    }
}

/// Minimal elements of the support under the componentwise order on (m, n), as (a, b) = (-m, n)
/// sorted by a ascending.
inline StairSeq min_corners(const LaurentPoly& f) {
    certify_corners(f);
    std::vector<Corner> out;
    std::int64_t best_n = 0;
    bool have = false;
    // terms_ is sorted by (m, n): the first entry of each column has the least n.
    std::optional<std::int64_t> column;
    for (const auto& [e, c] : f.terms()) {
        if (column && *column == e.m) continue;
        column = e.m;
        if (!have || e.n < best_n) {
            out.push_back(to_corner(e));
            best_n = e.n;
            have = true;
        }
    }
    std::reverse(out.begin(), out.end());
    return StairSeq(std::move(out));
}

inline LaurentPoly substitute_chart(const LaurentPoly& f, Chart chart) {
    LaurentPoly r(f.field());
    const UnknownRegion region = f.unknown().charted(chart);
    for (const auto& g : region.generators()) r.mark_unknown(g);
    for (const auto& [e, c] : f.terms()) r.add_term(chart_map(e, chart), c);
    return r;
}

/// Swaps t1 and t2.
inline LaurentPoly swapped(const LaurentPoly& f) {
    LaurentPoly r(f.field());
    for (const auto& g : f.unknown().generators()) r.mark_unknown({g.n, g.m});
    for (const auto& [e, c] : f.terms()) r.add_term({e.n, e.m}, c);
    return r;
}

/**
 * Substitutes t2 -> t2 + a (a != 0). Nonnegative powers expand exactly; t2^{-s} expands as
 * a^{-s} sum_j C(s-1+j, j) (-1)^j a^{-j} t2^j for j < budget.n_terms, after which the columns
 * carrying negative powers are unknown. f is embedded into the field of a if needed.
 */
inline LaurentPoly translate_t2(const LaurentPoly& f_in, const gf::FieldElem& a, PrecisionBudget budget) {
    if (a.is_zero()) throw LaurentError("translate_t2: translation constant must be nonzero");
    if (budget.n_terms < 1) throw LaurentError("translate_t2: budget must be positive");
    const LaurentPoly f = gf::same_field(f_in.field(), a.field()) ? f_in : f_in.embedded(gf::Embedding(f_in.field(), a.field()));
    const auto& ctx = a.field();
    const std::uint32_t p = ctx->characteristic();

    LaurentPoly r(ctx);
    for (const auto& g : f.unknown().generators()) r.mark_unknown({g.m, 0});
    std::optional<std::int64_t> series_column;
    for (const auto& [e, c] : f.terms())
        if (e.n < 0) series_column = series_column ? std::min(*series_column, e.m) : e.m;
    if (series_column) r.mark_unknown({*series_column, budget.n_terms});

    const gf::FieldElem a_inv = a.inverse();
    for (const auto& [e, c] : f.terms()) {
        if (e.n >= 0) {
            const auto n = static_cast<std::uint64_t>(e.n);
            for (std::uint64_t j = 0; j <= n; ++j) {
                const auto binom = binomial_mod(n, j, p);
                if (binom == 0) continue;
                r.add_term({e.m, static_cast<std::int64_t>(j)},
                           c * gf::FieldElem::from_int(ctx, binom) * a.pow(n - j));
            }
        } else {
            const auto s = static_cast<std::uint64_t>(-e.n);
            const gf::FieldElem lead = c * a_inv.pow(s);
            gf::FieldElem step = gf::FieldElem::one(ctx);  // (-1/a)^j
            const gf::FieldElem ratio = -a_inv;
            for (std::int64_t j = 0; j < budget.n_terms; ++j) {
                const auto binom = binomial_mod(s - 1 + static_cast<std::uint64_t>(j), static_cast<std::uint64_t>(j), p);
                if (binom != 0) r.add_term({e.m, j}, lead * gf::FieldElem::from_int(ctx, binom) * step);
                step *= ratio;
            }
        }
    }
    return r;
}

/// Minimum exponent of the divisor's variable over the support; nullopt means +infinity.
inline std::optional<std::int64_t> valuation_along(const LaurentPoly& f, Divisor d) {
    std::optional<std::int64_t> v;
    for (const auto& [e, c] : f.terms()) {
        const std::int64_t x = d == Divisor::T1 ? e.m : e.n;
        v = v ? std::min(*v, x) : x;
    }
    for (const auto& g : f.unknown().generators()) {
        const std::int64_t x = d == Divisor::T1 ? g.m : g.n;
        if (!v || x < *v) throw PrecisionExceeded("valuation not determined at current precision");
    }
    return v;
}

/// Lowest column along a divisor: its index and the coefficient as a Laurent polynomial
/// (exponent -> coefficient) in the other variable.
struct Column {
    std::int64_t index = 0;
    std::map<std::int64_t, gf::FieldElem> coeffs;
};

inline std::optional<Column> leading_column(const LaurentPoly& f, Divisor d) {
    const auto v = valuation_along(f, d);
    if (!v) return std::nullopt;
    for (const auto& g : f.unknown().generators())
        if ((d == Divisor::T1 ? g.m : g.n) <= *v) throw PrecisionExceeded("leading column is truncated");
    Column col{*v, {}};
    for (const auto& [e, c] : f.terms()) {
        const auto [along, other] = d == Divisor::T1 ? std::pair{e.m, e.n} : std::pair{e.n, e.m};
        if (along == *v) col.coeffs.emplace(other, c);
    }
    return col;
}

}  // namespace laurent
}  // namespace ramify

#endif  // RAMIFY_LAURENT_HPP
