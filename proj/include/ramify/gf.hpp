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
 * @file gf.hpp
 * @brief Finite fields F_{p^k} in polynomial basis.
 *
 * A field is described by an immutable FieldCtx (characteristic, degree and a
 * monic irreducible modulus). Elements hold a shared reference to their context;
 * mixing elements of different contexts is an error, never an implicit coercion.
 * Embeddings between fields F_{p^k} -> F_{p^{km}} are explicit Embedding objects.
 *
 * Also provided: dense univariate polynomials over a field and root finding in
 * the extensions F_{p^{kd}}, d <= ext_cap.
 */

#ifndef RAMIFY_GF_HPP
#define RAMIFY_GF_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ramify::gf {

using Residue = std::uint32_t;

class FieldError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

class DivisionByZero : public FieldError {
   public:
    DivisionByZero() : FieldError("division by zero in finite field") {}
};

class ContextMismatch : public FieldError {
   public:
    ContextMismatch() : FieldError("operands belong to different fields") {}
};

namespace details {

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline Residue inv_mod(Residue a, Residue p) {
    // p is prime and small; Fermat.
    std::uint64_t result = 1, base = a % p;
    std::uint64_t e = p - 2;
    while (e) {
        if (e & 1) result = result * base % p;
        base = base * base % p;
        e >>= 1;
    }
    return static_cast<Residue>(result);
}

// Dense polynomials over the prime field F_p, coefficients low to high.
using PrimePoly = std::vector<Residue>;

inline void trim(PrimePoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline PrimePoly pp_mod(PrimePoly a, const PrimePoly& m, Residue p) {
    trim(a);
    const std::size_t dm = m.size() - 1;
    const Residue lead_inv = inv_mod(m.back(), p);
    while (a.size() > dm) {
        const std::uint64_t c = std::uint64_t{a.back()} * lead_inv % p;
        const std::size_t shift = a.size() - 1 - dm;
        for (std::size_t i = 0; i <= dm; ++i)
            a[shift + i] = static_cast<Residue>((a[shift + i] + p - c * m[i] % p) % p);
        trim(a);
    }
    return a;
}

inline PrimePoly pp_mulmod(const PrimePoly& a, const PrimePoly& b, const PrimePoly& m, Residue p) {
    if (a.empty() || b.empty()) return {};
    PrimePoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = static_cast<Residue>((r[i + j] + std::uint64_t{a[i]} * b[j]) % p);
    return pp_mod(std::move(r), m, p);
}

inline PrimePoly pp_powmod(PrimePoly base, std::uint64_t e, const PrimePoly& m, Residue p) {
    PrimePoly result{1};
    base = pp_mod(std::move(base), m, p);
    while (e) {
        if (e & 1) result = pp_mulmod(result, base, m, p);
        base = pp_mulmod(base, base, m, p);
        e >>= 1;
    }
    return pp_mod(std::move(result), m, p);
}

inline PrimePoly pp_gcd(PrimePoly a, PrimePoly b, Residue p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        PrimePoly r = pp_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

// Ben-Or: f of degree k is irreducible iff gcd(f, x^{p^i} - x) = 1 for i <= k/2.
inline bool pp_is_irreducible(const PrimePoly& f, Residue p) {
    const std::size_t k = f.size() - 1;
    if (k == 0) return false;
    if (k == 1) return true;
    PrimePoly xp{0, 1};
    for (std::size_t i = 1; i <= k / 2; ++i) {
        xp = pp_powmod(xp, p, f, p);
        PrimePoly diff = xp;
        diff.resize(std::max<std::size_t>(diff.size(), 2), 0);
        diff[1] = static_cast<Residue>((diff[1] + p - 1) % p);
        trim(diff);
        if (diff.empty()) return false;
        if (pp_gcd(f, diff, p).size() != 1) return false;
    }
    return true;
}

inline std::uint64_t checked_pow(std::uint64_t base, unsigned e) {
    std::uint64_t r = 1;
    for (unsigned i = 0; i < e; ++i) {
        if (r > (std::uint64_t{1} << 62) / base) throw FieldError("field order too large");
        r *= base;
    }
    return r;
}

}  // namespace details

class FieldCtx;
using FieldRef = std::shared_ptr<const FieldCtx>;

/// F_{p^k} = F_p[g]/(modulus(g)).
class FieldCtx {
   public:
    /// Lexicographically least monic irreducible modulus (ordered by sum c_i p^i over the non-leading
    /// coefficients), so the same (p, k) always yields the same field.
    static FieldRef make(std::uint32_t p, unsigned k) {
        check_prime(p);
        if (k == 0) throw FieldError("extension degree must be >= 1");
        const std::uint64_t candidates = details::checked_pow(p, k);
        details::PrimePoly f(k + 1, 0);
        f[k] = 1;
        for (std::uint64_t code = 0; code < candidates; ++code) {
            std::uint64_t c = code;
            for (unsigned i = 0; i < k; ++i) {
                f[i] = static_cast<Residue>(c % p);
                c /= p;
            }
            if (details::pp_is_irreducible(f, p)) return FieldRef(new FieldCtx(p, f));
        }
        throw FieldError("no irreducible polynomial found");  // unreachable
    }

    /// Field with a caller-chosen modulus (monic, low-to-high coefficients); irreducibility is verified.
    static FieldRef with_modulus(std::uint32_t p, std::vector<Residue> modulus) {
        check_prime(p);
        if (modulus.size() < 2 || modulus.back() != 1) throw FieldError("modulus must be monic of degree >= 1");
        for (auto c : modulus)
            if (c >= p) throw FieldError("modulus coefficient out of range");
        if (!details::pp_is_irreducible(modulus, p)) throw FieldError("modulus is reducible");
        return FieldRef(new FieldCtx(p, std::move(modulus)));
    }

    std::uint32_t characteristic() const { return p_; }
    unsigned degree() const { return k_; }
    const std::vector<Residue>& modulus() const { return modulus_; }
    std::uint64_t order() const { return order_; }

    friend bool operator==(const FieldCtx& a, const FieldCtx& b) {
        return a.p_ == b.p_ && a.k_ == b.k_ && a.modulus_ == b.modulus_;
    }

    std::string spec() const { return std::to_string(p_) + "^" + std::to_string(k_); }

   private:
    FieldCtx(std::uint32_t p, std::vector<Residue> modulus)
        : p_(p),
          k_(static_cast<unsigned>(modulus.size() - 1)),
          modulus_(std::move(modulus)),
          order_(details::checked_pow(p, k_)) {}

    static void check_prime(std::uint32_t p) {
        if (!details::is_prime(p)) throw FieldError("characteristic " + std::to_string(p) + " is not prime");
        if (p >= (1u << 16)) throw FieldError("characteristic too large");
    }

    std::uint32_t p_;
    unsigned k_;
    std::vector<Residue> modulus_;
    std::uint64_t order_;
};

inline bool same_field(const FieldRef& a, const FieldRef& b) { return a == b || (a && b && *a == *b); }

/// Parses "p^k" (or a bare prime "p").
inline FieldRef parse_field_spec(const std::string& spec) {
    const auto caret = spec.find('^');
    try {
        std::size_t used = 0;
        const unsigned long p = std::stoul(spec.substr(0, caret), &used);
        if (used != (caret == std::string::npos ? spec.size() : caret)) throw std::invalid_argument("p");
        unsigned long k = 1;
        if (caret != std::string::npos) {
            const std::string rest = spec.substr(caret + 1);
            k = std::stoul(rest, &used);
            if (used != rest.size()) throw std::invalid_argument("k");
        }
        if (p > 0xffffffffUL || k > 64) throw FieldError("field spec out of range: " + spec);
        return FieldCtx::make(static_cast<std::uint32_t>(p), static_cast<unsigned>(k));
    } catch (const std::logic_error&) {
        throw FieldError("malformed field spec '" + spec + "', expected p^k");
    }
}

class FieldElem {
   public:
    explicit FieldElem(FieldRef ctx) : ctx_(std::move(ctx)), c_(ctx_->degree(), 0) {}

    static FieldElem zero(const FieldRef& ctx) { return FieldElem(ctx); }
    static FieldElem one(const FieldRef& ctx) { return from_int(ctx, 1); }

    static FieldElem from_int(const FieldRef& ctx, std::int64_t v) {
        FieldElem r(ctx);
        const std::int64_t p = ctx->characteristic();
        r.c_[0] = static_cast<Residue>(((v % p) + p) % p);
        return r;
    }

    /// Inverse of code(): digit i of the base-p expansion is the coefficient of g^i.
    static FieldElem from_code(const FieldRef& ctx, std::uint64_t code) {
        if (code >= ctx->order()) throw FieldError("element code out of range");
        FieldElem r(ctx);
        for (unsigned i = 0; i < ctx->degree(); ++i) {
            r.c_[i] = static_cast<Residue>(code % ctx->characteristic());
            code /= ctx->characteristic();
        }
        return r;
    }

    static FieldElem from_coeffs(const FieldRef& ctx, std::vector<Residue> coeffs) {
        if (coeffs.size() != ctx->degree()) throw FieldError("coefficient vector has wrong length");
        for (auto c : coeffs)
            if (c >= ctx->characteristic()) throw FieldError("coefficient out of range");
        FieldElem r(ctx);
        r.c_ = std::move(coeffs);
        return r;
    }

    /// The class of g in F_p[g]/(modulus). Undefined for prime fields.
    static FieldElem generator(const FieldRef& ctx) {
        if (ctx->degree() < 2) throw FieldError("prime field has no extension generator");
        FieldElem r(ctx);
        r.c_[1] = 1;
        return r;
    }

    const FieldRef& field() const { return ctx_; }
    const std::vector<Residue>& coeffs() const { return c_; }

    std::uint64_t code() const {
        std::uint64_t code = 0;
        for (unsigned i = ctx_->degree(); i-- > 0;) code = code * ctx_->characteristic() + c_[i];
        return code;
    }

    bool is_zero() const {
        return std::all_of(c_.begin(), c_.end(), [](Residue c) { return c == 0; });
    }
    bool is_one() const {
        if (c_[0] != 1) return false;
        return std::all_of(c_.begin() + 1, c_.end(), [](Residue c) { return c == 0; });
    }
    /// True when the element lies in the prime field.
    bool is_prime_field() const {
        return std::all_of(c_.begin() + 1, c_.end(), [](Residue c) { return c == 0; });
    }

    FieldElem& operator+=(const FieldElem& o) {
        check(o);
        const Residue p = ctx_->characteristic();
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] = static_cast<Residue>((c_[i] + o.c_[i]) % p);
        return *this;
    }
    FieldElem& operator-=(const FieldElem& o) {
        check(o);
        const Residue p = ctx_->characteristic();
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] = static_cast<Residue>((c_[i] + p - o.c_[i]) % p);
        return *this;
    }
    FieldElem& operator*=(const FieldElem& o) {
        check(o);
        c_ = mul_raw(c_, o.c_);
        return *this;
    }
    FieldElem& operator/=(const FieldElem& o) { return *this *= o.inverse(); }

    friend FieldElem operator+(FieldElem a, const FieldElem& b) { return a += b; }
    friend FieldElem operator-(FieldElem a, const FieldElem& b) { return a -= b; }
    friend FieldElem operator*(FieldElem a, const FieldElem& b) { return a *= b; }
    friend FieldElem operator/(FieldElem a, const FieldElem& b) { return a /= b; }

    FieldElem operator-() const { return FieldElem(ctx_) - *this; }

    friend bool operator==(const FieldElem& a, const FieldElem& b) {
        a.check(b);
        return a.c_ == b.c_;
    }

    FieldElem pow(std::uint64_t e) const {
        FieldElem result = one(ctx_);
        FieldElem base = *this;
        while (e) {
            if (e & 1) result *= base;
            base *= base;
            e >>= 1;
        }
        return result;
    }

    /// Signed exponent; negative powers require a nonzero base.
    FieldElem powi(std::int64_t e) const {
        if (e >= 0) return pow(static_cast<std::uint64_t>(e));
        return inverse().pow(static_cast<std::uint64_t>(-e));
    }

    FieldElem inverse() const {
        if (is_zero()) throw DivisionByZero();
        if (ctx_->degree() == 1) {
            FieldElem r(ctx_);
            r.c_[0] = details::inv_mod(c_[0], ctx_->characteristic());
            return r;
        }
        return pow(ctx_->order() - 2);
    }

    FieldElem frobenius() const { return pow(std::uint64_t{ctx_->characteristic()}); }

    /// Unique c with c^p = a, namely a^{p^{k-1}}.
    FieldElem pth_root() const {
        FieldElem r = *this;
        for (unsigned i = 1; i < ctx_->degree(); ++i) r = r.frobenius();
        return r;
    }

    /// Polynomial notation in the generator, e.g. "2*g^2+g+1"; plain integers in prime fields.
    std::string to_string() const {
        std::string out;
        for (unsigned i = ctx_->degree(); i-- > 0;) {
            if (c_[i] == 0) continue;
            if (!out.empty()) out += "+";
            if (i == 0) {
                out += std::to_string(c_[i]);
                continue;
            }
            if (c_[i] != 1) out += std::to_string(c_[i]) + "*";
            out += i == 1 ? "g" : "g^" + std::to_string(i);
        }
        return out.empty() ? "0" : out;
    }

   private:
    void check(const FieldElem& o) const {
        if (!same_field(ctx_, o.ctx_)) throw ContextMismatch();
    }

    std::vector<Residue> mul_raw(const std::vector<Residue>& a, const std::vector<Residue>& b) const {
        const Residue p = ctx_->characteristic();
        const unsigned k = ctx_->degree();
        if (k == 1) return {static_cast<Residue>(std::uint64_t{a[0]} * b[0] % p)};
        std::vector<std::uint64_t> prod(2 * k - 1, 0);
        for (unsigned i = 0; i < k; ++i) {
            if (a[i] == 0) continue;
            for (unsigned j = 0; j < k; ++j) prod[i + j] = (prod[i + j] + std::uint64_t{a[i]} * b[j]) % p;
        }
        const auto& m = ctx_->modulus();
        for (unsigned top = 2 * k - 2; top >= k; --top) {
            const std::uint64_t c = prod[top];
            if (c == 0) continue;
            prod[top] = 0;
            // g^k = -(m_0 + ... + m_{k-1} g^{k-1})
            for (unsigned i = 0; i < k; ++i) prod[top - k + i] = (prod[top - k + i] + (p - m[i]) % p * c) % p;
        }
        std::vector<Residue> r(k);
        for (unsigned i = 0; i < k; ++i) r[i] = static_cast<Residue>(prod[i]);
        return r;
    }

    FieldRef ctx_;
    std::vector<Residue> c_;
};

/// Fixed embedding F_{p^k} -> F_{p^{km}}: the generator maps to the least-code root of the source modulus.
class Embedding {
   public:
    Embedding(FieldRef src, FieldRef dst) : src_(std::move(src)), dst_(std::move(dst)), gen_image_(dst_) {
        if (src_->characteristic() != dst_->characteristic() || dst_->degree() % src_->degree() != 0)
            throw FieldError("no embedding F_" + src_->spec() + " -> F_" + dst_->spec());
        if (src_->degree() == 1) return;
        if (dst_->order() > kSearchLimit) throw FieldError("embedding target too large for exhaustive search");
        const auto& m = src_->modulus();
        for (std::uint64_t code = 0; code < dst_->order(); ++code) {
            const FieldElem x = FieldElem::from_code(dst_, code);
            FieldElem acc(dst_);
            for (std::size_t i = m.size(); i-- > 0;) acc = acc * x + FieldElem::from_int(dst_, m[i]);
            if (acc.is_zero()) {
                gen_image_ = x;
                return;
            }
        }
        throw FieldError("modulus has no root in target field");  // unreachable for valid towers
    }

    const FieldRef& source() const { return src_; }
    const FieldRef& target() const { return dst_; }

    FieldElem operator()(const FieldElem& a) const {
        if (!same_field(a.field(), src_)) throw ContextMismatch();
        const auto& c = a.coeffs();
        if (src_->degree() == 1) return FieldElem::from_int(dst_, c[0]);
        FieldElem acc(dst_);
        for (std::size_t i = c.size(); i-- > 0;) acc = acc * gen_image_ + FieldElem::from_int(dst_, c[i]);
        return acc;
    }

    static constexpr std::uint64_t kSearchLimit = std::uint64_t{1} << 24;

   private:
    FieldRef src_, dst_;
    FieldElem gen_image_;
};

inline FieldElem embed(const FieldElem& a, const FieldRef& target) {
    if (same_field(a.field(), target)) return a;
    return Embedding(a.field(), target)(a);
}

/// Memo of canonical fields and embeddings. Not thread-safe; one per computation.
class FieldCache {
   public:
    FieldRef field(std::uint32_t p, unsigned k) {
        auto [it, fresh] = fields_.try_emplace({p, k});
        if (fresh) it->second = FieldCtx::make(p, k);
        return it->second;
    }

    const Embedding& embedding(const FieldRef& src, const FieldRef& dst) {
        auto key = std::make_pair(key_of(src), key_of(dst));
        auto it = embeddings_.find(key);
        if (it == embeddings_.end()) it = embeddings_.emplace(std::move(key), Embedding(src, dst)).first;
        return it->second;
    }

   private:
    static std::vector<Residue> key_of(const FieldRef& f) {
        auto key = f->modulus();
        key.push_back(f->characteristic());
        return key;
    }

    std::map<std::pair<std::uint32_t, unsigned>, FieldRef> fields_;
    std::map<std::pair<std::vector<Residue>, std::vector<Residue>>, Embedding> embeddings_;
};

/// Dense univariate polynomial over a finite field, coefficients low to high, no trailing zeros.
class UPoly {
   public:
    explicit UPoly(FieldRef ctx) : ctx_(std::move(ctx)) {}
    UPoly(FieldRef ctx, std::vector<FieldElem> coeffs) : ctx_(std::move(ctx)), c_(std::move(coeffs)) {
        for (const auto& c : c_)
            if (!same_field(c.field(), ctx_)) throw ContextMismatch();
        trim();
    }

    static UPoly x(const FieldRef& ctx) { return UPoly(ctx, {FieldElem::zero(ctx), FieldElem::one(ctx)}); }

    const FieldRef& field() const { return ctx_; }
    const std::vector<FieldElem>& coeffs() const { return c_; }
    /// -1 for the zero polynomial.
    long degree() const { return static_cast<long>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }

    FieldElem operator()(const FieldElem& x) const {
        FieldElem acc(ctx_);
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
        return acc;
    }

    UPoly derivative() const {
        std::vector<FieldElem> d;
        for (std::size_t i = 1; i < c_.size(); ++i)
            d.push_back(c_[i] * FieldElem::from_int(ctx_, static_cast<std::int64_t>(i)));
        return UPoly(ctx_, std::move(d));
    }

    UPoly mapped(const Embedding& e) const {
        std::vector<FieldElem> d;
        d.reserve(c_.size());
        for (const auto& c : c_) d.push_back(e(c));
        return UPoly(e.target(), std::move(d));
    }

    friend UPoly operator-(const UPoly& a, const UPoly& b) {
        std::vector<FieldElem> r(std::max(a.c_.size(), b.c_.size()), FieldElem::zero(a.ctx_));
        for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] -= b.c_[i];
        return UPoly(a.ctx_, std::move(r));
    }

    friend UPoly operator*(const UPoly& a, const UPoly& b) {
        if (a.is_zero() || b.is_zero()) return UPoly(a.ctx_);
        std::vector<FieldElem> r(a.c_.size() + b.c_.size() - 1, FieldElem::zero(a.ctx_));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        return UPoly(a.ctx_, std::move(r));
    }

    /// (quotient, remainder).
    static std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b) {
        if (b.is_zero()) throw DivisionByZero();
        std::vector<FieldElem> rem = a.c_;
        const std::size_t db = b.c_.size() - 1;
        if (rem.size() <= db) return {UPoly(a.ctx_), a};
        std::vector<FieldElem> quot(rem.size() - db, FieldElem::zero(a.ctx_));
        const FieldElem lead_inv = b.c_.back().inverse();
        for (std::size_t top = rem.size(); top-- > db;) {
            const FieldElem c = rem[top] * lead_inv;
            if (c.is_zero()) continue;
            quot[top - db] = c;
            for (std::size_t i = 0; i <= db; ++i) rem[top - db + i] -= c * b.c_[i];
        }
        rem.erase(rem.begin() + static_cast<std::ptrdiff_t>(db), rem.end());
        return {UPoly(a.ctx_, std::move(quot)), UPoly(a.ctx_, std::move(rem))};
    }

    friend UPoly operator%(const UPoly& a, const UPoly& b) { return divmod(a, b).second; }

    UPoly monic() const {
        if (is_zero()) return *this;
        const FieldElem inv = c_.back().inverse();
        std::vector<FieldElem> r;
        for (const auto& c : c_) r.push_back(c * inv);
        return UPoly(ctx_, std::move(r));
    }

    static UPoly gcd(UPoly a, UPoly b) {
        while (!b.is_zero()) {
            UPoly r = a % b;
            a = std::move(b);
            b = std::move(r);
        }
        return a.monic();
    }

    static UPoly powmod(UPoly base, std::uint64_t e, const UPoly& m) {
        UPoly result(m.ctx_, {FieldElem::one(m.ctx_)});
        base = base % m;
        while (e) {
            if (e & 1) result = (result * base) % m;
            base = (base * base) % m;
            e >>= 1;
        }
        return result % m;
    }

    friend bool operator==(const UPoly& a, const UPoly& b) {
        if (!same_field(a.ctx_, b.ctx_) || a.c_.size() != b.c_.size()) return false;
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            if (!(a.c_[i] == b.c_[i])) return false;
        return true;
    }

   private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

    FieldRef ctx_;
    std::vector<FieldElem> c_;
};

struct Root {
    FieldElem value;
    unsigned degree;  ///< [F(value) : base field]
    unsigned multiplicity;
};

struct RootSet {
    std::vector<Root> roots;
    /// True when some roots live beyond ext_cap (or in fields too large to enumerate).
    bool partial = false;
};

/// Smallest d' with a^{Q^{d'}} = a, where Q is the order of `base`.
inline unsigned degree_over(const FieldElem& a, const FieldCtx& base) {
    const unsigned rel = a.field()->degree() / base.degree();
    FieldElem x = a;
    for (unsigned d = 1; d <= rel; ++d) {
        x = x.pow(base.order());
        if (x == a) return d;
    }
    return rel;
}

/// Representative of the Galois orbit of `a` over `base`: the conjugate with least code.
inline FieldElem orbit_representative(const FieldElem& a, const FieldCtx& base) {
    FieldElem best = a, x = a;
    const unsigned d = degree_over(a, base);
    for (unsigned i = 1; i < d; ++i) {
        x = x.pow(base.order());
        if (x.code() < best.code()) best = x;
    }
    return best;
}

/**
 * All roots of q in F_{Q^d}, 1 <= d <= ext_cap, Q = |base field of q|.
 *
 * Each root appears once, in the canonical field of degree k*d where d is its
 * degree over the base; all Galois conjugates are listed. A distinct-degree gcd
 * with x^{Q^d} - x skips degrees that carry no new roots; the remaining degrees
 * are searched exhaustively.
 */
inline RootSet find_roots(const UPoly& q, unsigned ext_cap, FieldCache& cache,
                          std::uint64_t enumeration_limit = std::uint64_t{1} << 22) {
    if (q.is_zero()) throw FieldError("find_roots: zero polynomial");
    if (ext_cap == 0) throw FieldError("find_roots: ext_cap must be >= 1");
    const FieldRef& base = q.field();
    RootSet out;
    if (q.degree() == 0) return out;

    const UPoly x = UPoly::x(base);
    UPoly frob = x;  // x^{Q^d} mod q
    std::vector<std::size_t> new_count(ext_cap + 1, 0);
    unsigned long found_with_mult = 0;

    for (unsigned d = 1; d <= ext_cap; ++d) {
        frob = UPoly::powmod(frob, base->order(), q);
        const UPoly g = UPoly::gcd(q, frob - x);
        std::size_t known = 0;
        for (unsigned dd = 1; dd < d; ++dd)
            if (d % dd == 0) known += new_count[dd];
        if (static_cast<std::size_t>(g.degree()) <= known) continue;

        const std::uint64_t target_order = details::checked_pow(base->order(), d);
        if (target_order > enumeration_limit) {
            out.partial = true;
            continue;
        }
        const FieldRef target = cache.field(base->characteristic(), base->degree() * d);
        const Embedding& emb = cache.embedding(base, target);
        const UPoly qt = q.mapped(emb);
        for (std::uint64_t code = 0; code < target->order(); ++code) {
            const FieldElem a = FieldElem::from_code(target, code);
            if (!qt(a).is_zero()) continue;
            if (degree_over(a, *base) != d) continue;
            unsigned mult = 0;
            UPoly rest = qt;
            const UPoly lin(target, {-a, FieldElem::one(target)});
            while (true) {
                auto [quot, rem] = UPoly::divmod(rest, lin);
                if (!rem.is_zero()) break;
                ++mult;
                rest = std::move(quot);
            }
            out.roots.push_back({a, d, mult});
            ++new_count[d];
            found_with_mult += mult;
        }
    }
    if (found_with_mult < static_cast<unsigned long>(q.degree())) out.partial = true;
    return out;
}

}  // namespace ramify::gf

#endif  // RAMIFY_GF_HPP
