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
 * @file blowup.hpp
 * @brief Kato's r_x by explicit point blow-ups.
 *
 * Every node re-runs good_rep in its own coordinates. A clean node is a leaf.
 * Otherwise the node is blown up and its children are the chart-B origin
 * (type II), the chart-A origin (type of the parent) and the non-clean points
 * v = a != 0 of the exceptional divisor seen from chart A (type I).
 *
 * Points over extension fields come in Galois orbits with identical subtrees,
 * so each orbit is expanded once, at its least-code member, and weighted by
 * the orbit size.
 */

#ifndef RAMIFY_BLOWUP_HPP
#define RAMIFY_BLOWUP_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gf.hpp"
#include "laurent.hpp"
#include "polygon.hpp"
#include "reduce.hpp"

namespace ramify::blowup {

enum class Mode { Candidates, Sweep };

inline std::string to_string(Mode m) { return m == Mode::Candidates ? "candidates" : "sweep"; }

struct SimConfig {
    Mode mode = Mode::Candidates;
    unsigned ext_cap = 4;
    unsigned sweep_degree = 2;
    unsigned depth_cap = 32;
    PrecisionBudget precision{};
    std::int64_t precision_cap = 1024;
    std::uint64_t sweep_limit = std::uint64_t{1} << 16;

    void validate() const {
        if (depth_cap < 1) throw std::invalid_argument("depth_cap must be >= 1");
        if (sweep_degree < 1) throw std::invalid_argument("sweep_degree must be >= 1");
        if (ext_cap < 1) throw std::invalid_argument("ext_cap must be >= 1");
        if (precision.n_terms < 1 || precision.n_terms > precision_cap)
            throw std::invalid_argument("precision must lie in [1, precision_cap]");
    }
};

/// Where a node sits relative to its parent.
enum class Origin { Root, ChartB, ChartA, OffOrigin };

struct BlowupNode {
    std::string label;
    Origin origin = Origin::Root;
    std::string field;
    PointType t = PointType::II;
    StairSeq pg;
    std::int64_t e = 0;
    std::int64_t mu = 0;
    bool clean = true;
    bool constant_added = false;
    std::optional<std::int64_t> sw1, sw2, swE;
    /// Galois orbit size of this point over its parent's field.
    unsigned orbit = 1;
    /// mu plus the orbit-weighted subtotals of the children.
    std::int64_t subtotal = 0;
    /// Truncation order of the local expansion; 0 when exact.
    std::int64_t precision_used = 0;
    /// Parent pg transformed by the matching J-rule; set on chart-origin children.
    std::optional<StairSeq> predicted_pg;
    std::vector<BlowupNode> children;

    bool chart_consistent() const { return !predicted_pg || *predicted_pg == pg; }
};

struct SimFlags {
    bool constant_added_anywhere = false;
    bool partial_roots = false;
    unsigned precision_escalations = 0;
    /// Largest degree, over the root field, of a candidate root off the chart origins.
    unsigned max_root_degree = 1;
};

struct SimResult {
    std::int64_t r_x = 0;
    BlowupNode tree;
    SimFlags flags;
    std::int64_t precision = 0;

    /// Chart consistency at every node and no non-clean point away from the chart origins.
    bool good_regime() const;
    unsigned depth() const;
    /// Labels of all non-clean nodes.
    std::set<std::string> noncleans() const;
    /// Labels of non-clean nodes off the chart origins.
    std::set<std::string> off_origin_noncleans() const;
};

class SimulationError : public std::runtime_error {
   public:
    SimulationError(const std::string& msg, BlowupNode partial)
        : std::runtime_error(msg), partial_(std::move(partial)) {}
    const BlowupNode& partial_tree() const { return partial_; }

   private:
    BlowupNode partial_;
};

namespace details {

template <class F>
void visit(const BlowupNode& n, F&& f) {
    f(n);
    for (const auto& c : n.children) visit(c, f);
}

inline unsigned internal_depth(const BlowupNode& n) {
    if (n.clean) return 0;
    unsigned d = 0;
    for (const auto& c : n.children) d = std::max(d, internal_depth(c));
    return d + 1;
}

}  // namespace details

inline bool SimResult::good_regime() const {
    bool ok = true;
    details::visit(tree, [&](const BlowupNode& n) {
        if (!n.chart_consistent()) ok = false;
        if (n.origin == Origin::OffOrigin && !n.clean) ok = false;
    });
    return ok;
}

inline unsigned SimResult::depth() const { return details::internal_depth(tree); }

inline std::set<std::string> SimResult::noncleans() const {
    std::set<std::string> out;
    details::visit(tree, [&](const BlowupNode& n) {
        if (!n.clean) out.insert(n.label);
    });
    return out;
}

inline std::set<std::string> SimResult::off_origin_noncleans() const {
    std::set<std::string> out;
    details::visit(tree, [&](const BlowupNode& n) {
        if (!n.clean && n.origin == Origin::OffOrigin) out.insert(n.label);
    });
    return out;
}

/// A point v = a of the exceptional divisor in chart A, a != 0, with its local equation.
struct EPoint {
    gf::FieldElem a;
    /// Degree of a over the field of the blown-up point.
    unsigned orbit;
    LaurentPoly local;
};

class Simulator {
   public:
    explicit Simulator(SimConfig cfg = {}) : cfg_(cfg) { cfg_.validate(); }

    const SimConfig& config() const { return cfg_; }

    SimResult simulate(const LaurentPoly& f, PointType t) {
        SimFlags flags;
        std::int64_t n = cfg_.precision.n_terms;
        while (true) {
            try {
                SimResult r = run(f, t, n);
                if (!used_translation_) {
                    r.flags.precision_escalations = flags.precision_escalations;
                    return r;
                }
                // Doubling check: the same tree must come out at twice the precision.
                if (2 * n <= cfg_.precision_cap) {
                    const SimResult again = run(f, t, 2 * n);
                    if (again.r_x == r.r_x && again.noncleans() == r.noncleans()) {
                        r.flags.precision_escalations = flags.precision_escalations;
                        return r;
                    }
                } else {
                    r.flags.precision_escalations = flags.precision_escalations;
                    return r;
                }
            } catch (const PrecisionExceeded& ex) {
                if (2 * n > cfg_.precision_cap)
                    throw SimulationError(std::string("precision cap reached: ") + ex.what(), partial_);
            }
            n *= 2;
            ++flags.precision_escalations;
            if (n > cfg_.precision_cap) throw SimulationError("precision cap reached", partial_);
        }
    }

    /// Non-clean children of a non-clean point, as (local equation, type).
    std::vector<std::pair<LaurentPoly, PointType>> children_of(const LaurentPoly& f, PointType t) {
        n_terms_ = cfg_.precision.n_terms;
        root_degree_ = f.field()->degree();
        const auto r = reduce::good_rep(f);
        std::vector<std::pair<LaurentPoly, PointType>> out;
        auto keep = [&](LaurentPoly g, PointType s) {
            if (!reduce::is_clean(g, s)) out.emplace_back(std::move(g), s);
        };
        keep(laurent::substitute_chart(r.g, Chart::B), PointType::II);
        keep(laurent::substitute_chart(r.g, Chart::A), t);
        for (auto& pt : noncleans_on_E(laurent::substitute_chart(r.g, Chart::A))) out.emplace_back(std::move(pt.local), PointType::I);
        return out;
    }

    /// Raw off-origin candidates from the leading u-coefficient (before the cleanness test).
    std::vector<EPoint> candidates_on_E(const LaurentPoly& f_chart_a) {
        std::vector<EPoint> out;
        const auto col = laurent::leading_column(f_chart_a, Divisor::T1);
        if (!col || col->index >= 0) return out;
        const auto& F = f_chart_a.field();
        const std::int64_t p = F->characteristic();

        const std::int64_t lo = col->coeffs.begin()->first;
        std::vector<gf::FieldElem> num(static_cast<std::size_t>(col->coeffs.rbegin()->first - lo + 1), gf::FieldElem::zero(F));
        for (const auto& [n, c] : col->coeffs) num[static_cast<std::size_t>(n - lo)] = c;
        const gf::UPoly psi(F, num);

        std::vector<gf::UPoly> polys{psi};
        if ((-col->index) % p == 0) {
            // psi' = v^{lo-1} * (v * num' + lo * num): same nonzero roots.
            std::vector<gf::FieldElem> d(num.size(), gf::FieldElem::zero(F));
            for (std::size_t i = 0; i < num.size(); ++i)
                d[i] = num[i] * gf::FieldElem::from_int(F, lo + static_cast<std::int64_t>(i));
            const gf::UPoly dpsi(F, d);
            if (!dpsi.is_zero()) polys.push_back(dpsi);
        }

        std::set<std::pair<unsigned, std::uint64_t>> seen;
        for (const auto& q : polys) {
            if (q.degree() < 1) continue;
            const auto roots = gf::find_roots(q, cfg_.ext_cap, cache_);
            if (roots.partial) flags_.partial_roots = true;
            for (const auto& root : roots.roots) {
                if (root.value.is_zero()) continue;
                const auto rep = gf::orbit_representative(root.value, *F);
                if (!seen.insert({rep.field()->degree(), rep.code()}).second) continue;
                out.push_back({rep, root.degree, translated(f_chart_a, rep)});
            }
        }
        return out;
    }

    /// Every orbit of points v = a != 0 whose absolute degree over the root field is at most sweep_degree.
    std::vector<EPoint> sweep_on_E(const LaurentPoly& f_chart_a) {
        std::vector<EPoint> out;
        const auto& F = f_chart_a.field();
        const unsigned k = F->degree();
        for (unsigned d = 1; d <= cfg_.sweep_degree; ++d) {
            const unsigned K = root_degree_ * d;
            if (K % k != 0) continue;
            const unsigned rel = K / k;
            const auto target = cache_.field(F->characteristic(), K);
            if (target->order() > cfg_.sweep_limit) {
                flags_.partial_roots = true;
                continue;
            }
            for (std::uint64_t code = 1; code < target->order(); ++code) {
                const auto a = gf::FieldElem::from_code(target, code);
                if (gf::degree_over(a, *F) != rel) continue;
                if (!(gf::orbit_representative(a, *F) == a)) continue;
                out.push_back({a, rel, translated(f_chart_a, a)});
            }
        }
        return out;
    }

    /// Off-origin points of E that are certified non-clean by the full local test.
    std::vector<EPoint> noncleans_on_E(const LaurentPoly& f_chart_a) {
        auto pts = cfg_.mode == Mode::Candidates ? candidates_on_E(f_chart_a) : sweep_on_E(f_chart_a);
        if (cfg_.mode == Mode::Candidates)
            for (const auto& pt : pts) note_degree(pt.a);
        std::erase_if(pts, [](const EPoint& pt) { return reduce::is_clean(pt.local, PointType::I); });
        return pts;
    }

   private:
    struct Inherited {
        std::optional<std::int64_t> sw1, sw2;
    };

    SimResult run(const LaurentPoly& f, PointType t, std::int64_t n_terms) {
        n_terms_ = n_terms;
        flags_ = {};
        used_translation_ = false;
        root_degree_ = f.field()->degree();
        partial_ = {};
        partial_.label = "x";
        build(partial_, f, t, {}, 0);
        SimResult r;
        r.tree = partial_;
        r.r_x = r.tree.subtotal;
        r.flags = flags_;
        r.precision = n_terms;
        return r;
    }

    LaurentPoly translated(const LaurentPoly& f, const gf::FieldElem& a) {
        used_translation_ = true;
        const LaurentPoly g = gf::same_field(f.field(), a.field()) ? f : f.embedded(cache_.embedding(f.field(), a.field()));
        return laurent::translate_t2(g, a, {n_terms_});
    }

    void note_degree(const gf::FieldElem& a) {
        const unsigned deg = a.field()->degree() / root_degree_;
        flags_.max_root_degree = std::max(flags_.max_root_degree, std::max(deg, 1u));
    }

    std::optional<std::int64_t> direct_or_inherited(const LaurentPoly& g, Divisor d, std::optional<std::int64_t> inherited,
                                                    const std::string& label) const {
        try {
            const std::int64_t v = reduce::swan(g, d).value;
            if (inherited && *inherited != v)
                throw SimulationError("Swan conductor along " + std::string(d == Divisor::T1 ? "T1" : "T2") + " at " + label +
                                          " is " + std::to_string(v) + " but the parent divisor has " + std::to_string(*inherited),
                                      partial_);
            return v;
        } catch (const PrecisionExceeded&) {
            if (!inherited) throw;
            return inherited;
        }
    }

    void build(BlowupNode& node, const LaurentPoly& f, PointType t, Inherited inh, unsigned level) {
        node.t = t;
        node.field = f.field()->spec();
        node.precision_used = f.is_exact() ? 0 : n_terms_;
        const auto r = reduce::good_rep(f);
        node.pg = r.pg;
        node.constant_added = r.constant_added;
        if (r.constant_added) flags_.constant_added_anywhere = true;
        node.clean = polygon::is_clean_shape(r.pg, t);
        node.e = r.pg.empty() ? 0 : polygon::e_value(r.pg);
        node.mu = polygon::mu(std::max<std::int64_t>(node.e, 0), t);
        node.subtotal = 0;
        if (node.clean) {
            node.mu = 0;
            return;
        }
        if (level >= cfg_.depth_cap) throw SimulationError("depth cap " + std::to_string(cfg_.depth_cap) + " exceeded at " + node.label, partial_);

        node.sw1 = direct_or_inherited(r.g, Divisor::T1, inh.sw1, node.label);
        if (t == PointType::II) node.sw2 = direct_or_inherited(r.g, Divisor::T2, inh.sw2, node.label);
        node.swE = reduce::swan_exceptional(r.g).value;
        const std::int64_t e_swan = *node.sw1 + (t == PointType::II ? *node.sw2 : 0) - *node.swE;
        if (e_swan != node.e)
            throw SimulationError("e mismatch at " + node.label + ": Swan identity gives " + std::to_string(e_swan) +
                                      ", corners give " + std::to_string(node.e) + " for pg " + node.pg.to_string(),
                                  partial_);
        if (node.e < 0) throw SimulationError("negative e at " + node.label, partial_);
        node.mu = polygon::mu(node.e, t);

        const auto J = polygon::j_sets(r.pg);
        const LaurentPoly fb = laurent::substitute_chart(r.g, Chart::B);
        const LaurentPoly fa = laurent::substitute_chart(r.g, Chart::A);

        std::vector<std::pair<BlowupNode, std::pair<LaurentPoly, std::pair<PointType, Inherited>>>> pending;
        {
            BlowupNode b;
            b.label = node.label + "/B";
            b.origin = Origin::ChartB;
            b.predicted_pg = polygon::shear_b(r.pg, J.ja, false);
            pending.push_back({std::move(b), {fb, {PointType::II, Inherited{node.sw1, node.swE}}}});
        }
        {
            BlowupNode a;
            a.label = node.label + "/A";
            a.origin = Origin::ChartA;
            a.predicted_pg = polygon::shear_a(r.pg, J.jb, false);
            pending.push_back({std::move(a), {fa, {t, Inherited{node.swE, node.sw2}}}});
        }
        for (auto& pt : noncleans_on_E(fa)) {
            BlowupNode c;
            c.label = node.label + "/A[v=" + pt.a.to_string() + " in F" + pt.a.field()->spec() + "]";
            c.origin = Origin::OffOrigin;
            c.orbit = pt.orbit;
            pending.push_back({std::move(c), {std::move(pt.local), {PointType::I, Inherited{node.swE, std::nullopt}}}});
        }

        node.subtotal = node.mu;
        for (auto& [child, input] : pending) {
            node.children.push_back(std::move(child));
            BlowupNode& c = node.children.back();
            build(c, input.first, input.second.first, input.second.second, level + 1);
            node.subtotal += static_cast<std::int64_t>(c.orbit) * c.subtotal;
        }
    }

    SimConfig cfg_;
    gf::FieldCache cache_;
    SimFlags flags_;
    std::int64_t n_terms_ = 16;
    unsigned root_degree_ = 1;
    bool used_translation_ = false;
    BlowupNode partial_;
};

inline SimResult simulate(const LaurentPoly& f, PointType t, const SimConfig& cfg = {}) { return Simulator(cfg).simulate(f, t); }

}  // namespace ramify::blowup

#endif  // RAMIFY_BLOWUP_HPP
