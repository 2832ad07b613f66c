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
 * @file report.hpp
 * @brief End-to-end pipeline for one input: good_rep, pg, ess, r', closed form,
 *        blow-up simulation, Kato bound and a perturbed rerun, with verdicts.
 */

#ifndef RAMIFY_REPORT_HPP
#define RAMIFY_REPORT_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "blowup.hpp"
#include "euler.hpp"
#include "gf.hpp"
#include "laurent.hpp"
#include "parse.hpp"
#include "polygon.hpp"
#include "reduce.hpp"

namespace ramify::report {

using json = nlohmann::ordered_json;

/// An error tagged with the pipeline stage that raised it.
class StageError : public std::runtime_error {
   public:
    StageError(std::string stage, const std::string& msg)
        : std::runtime_error(stage + ": " + msg), stage_(std::move(stage)) {}
    const std::string& stage() const { return stage_; }

   private:
    std::string stage_;
};

inline PointType parse_type(const std::string& s) {
    if (s == "I" || s == "1") return PointType::I;
    if (s == "II" || s == "2") return PointType::II;
    throw std::invalid_argument("point type must be I or II, got '" + s + "'");
}

// ---------------------------------------------------------------------------
// Random inputs

/// Quadrant staircase with a uniformly drawn number of corners in [1, max_k + 1]
/// and coordinates in [-bound, bound]. Type I staircases start at b = 0.
inline StairSeq random_staircase(std::mt19937_64& rng, int max_k, int bound, PointType t) {
    // Type I: a in [0, bound].
    std::uniform_int_distribution<int> kd(0, max_k), cd(-bound, bound), ad(t == PointType::I ? 0 : -bound, bound);
    const int k = kd(rng);
    while (true) {
        std::set<int> as, bs;
        while (static_cast<int>(as.size()) < k + 1) as.insert(ad(rng));
        while (static_cast<int>(bs.size()) < k + 1) bs.insert(cd(rng));
        const int shift = t == PointType::I ? -*bs.begin() : 0;
        std::vector<Corner> pts;
        auto ib = bs.begin();
        for (auto ia = as.begin(); ia != as.end(); ++ia, ++ib) pts.push_back({*ia, *ib + shift});
        if (pts.back().b > bound) continue;
        StairSeq s(std::move(pts));
        if (polygon::quadrant_ok(s)) return s;
    }
}

/// Polynomial with t1-poles up to max_pole. Type II draws t2-exponents in [-max_pole, 0],
/// type I in [0, max_pole].
inline LaurentPoly random_poly(std::mt19937_64& rng, const gf::FieldRef& F, PointType t, int max_pole, int max_terms) {
    std::uniform_int_distribution<int> md(-max_pole, 0), nd(0, max_pole), td(1, max_terms);
    std::uniform_int_distribution<std::uint64_t> cd(1, F->order() - 1);
    LaurentPoly f(F);
    const int terms = td(rng);
    for (int i = 0; i < terms; ++i) {
        const int m = md(rng);
        const int n = t == PointType::II ? -nd(rng) : nd(rng);
        f.add_term({m, n}, gf::FieldElem::from_code(F, cd(rng)));
    }
    return f;
}

/// Small h for the perturbation check; type I keeps t2 out of the denominators.
inline LaurentPoly random_perturbation(std::mt19937_64& rng, const gf::FieldRef& F, PointType t) {
    std::uniform_int_distribution<int> ed(-3, 0), td(1, 2);
    std::uniform_int_distribution<std::uint64_t> cd(1, F->order() - 1);
    LaurentPoly h(F);
    const int terms = td(rng);
    for (int i = 0; i < terms; ++i)
        h.add_term({ed(rng), t == PointType::II ? ed(rng) : 0}, gf::FieldElem::from_code(F, cd(rng)));
    return h;
}

// ---------------------------------------------------------------------------
// Single-input report

struct InputSpec {
    std::string field = "2^1";
    PointType t = PointType::II;
    std::string expr = "0";
    blowup::SimConfig sim{};
    std::uint64_t seed = 1;
};

struct Invariants {
    explicit Invariants(reduce::GoodRep r) : rep(std::move(r)) {}

    reduce::GoodRep rep;
    std::optional<StairSeq> ess;
    std::int64_t sw1 = 0, sw2 = 0, swE = 0;
    std::int64_t e = 0;
    polygon::RPrimeTrace trace;
    std::int64_t r_prime_closed = 0;
    std::int64_t kato_bound = 0;
    blowup::SimResult sim;
};

struct Report {
    InputSpec spec;
    LaurentPoly f;
    Invariants base;
    LaurentPoly h;
    Invariants perturbed;
};

inline Invariants compute_invariants(const LaurentPoly& f, PointType t, const blowup::SimConfig& cfg) {
    auto rep = [&] {
        try {
            return reduce::good_rep(f);
        } catch (const std::exception& ex) {
            throw StageError("good_rep", ex.what());
        }
    }();
    Invariants inv(std::move(rep));
    const StairSeq& pg = inv.rep.pg;
    try {
        if (!pg.empty()) {
            inv.ess = polygon::ess(pg);
            inv.e = polygon::e_value(pg);
        }
        inv.trace = polygon::r_prime(pg, t);
        inv.r_prime_closed = polygon::r_prime_closed(pg, t);
        inv.kato_bound = polygon::kato_bound(pg, t);
    } catch (const std::exception& ex) {
        throw StageError("polygon", ex.what());
    }
    try {
        inv.sw1 = reduce::swan(f, Divisor::T1).value;
        inv.sw2 = reduce::swan(f, Divisor::T2).value;
        inv.swE = reduce::swan_exceptional(f).value;
    } catch (const std::exception& ex) {
        throw StageError("swan", ex.what());
    }
    try {
        inv.sim = blowup::simulate(f, t, cfg);
    } catch (const std::exception& ex) {
        throw StageError("simulate", ex.what());
    }
    return inv;
}

inline Report run_report(const InputSpec& spec) {
    gf::FieldRef F;
    try {
        F = gf::parse_field_spec(spec.field);
    } catch (const std::exception& ex) {
        throw StageError("field", ex.what());
    }
    LaurentPoly f(F);
    try {
        f = parse_poly(spec.expr, F);
    } catch (const std::exception& ex) {
        throw StageError("parse", ex.what());
    }
    if (spec.t == PointType::I)
        for (const auto& [e, c] : f.terms())
            if (e.n < 0) throw StageError("parse", "type I input must not have t2 in a denominator");

    std::mt19937_64 rng(spec.seed);
    LaurentPoly h = random_perturbation(rng, F, spec.t);
    Invariants base = compute_invariants(f, spec.t, spec.sim);
    Invariants perturbed = compute_invariants(f + reduce::beta(h), spec.t, spec.sim);
    return Report{spec, std::move(f), std::move(base), std::move(h), std::move(perturbed)};
}

/// Verdicts are recomputed from the report's values on every call.
struct Verdict {
    std::string name;
    bool pass;
    std::string detail;
};

inline std::vector<Verdict> verdicts(const Report& r) {
    const Invariants& b = r.base;
    const Invariants& q = r.perturbed;
    const PointType t = r.spec.t;
    std::vector<Verdict> out;

    out.push_back({"recursion_equals_closed_form", b.trace.total == b.r_prime_closed,
                   std::to_string(b.trace.total) + " vs " + std::to_string(b.r_prime_closed)});

    const std::int64_t e_swan = b.sw1 + (t == PointType::II ? b.sw2 : 0) - b.swE;
    out.push_back({"e_identity", b.rep.pg.empty() || !b.rep.quadrant_ok || e_swan == b.e,
                   "e(pg) = " + std::to_string(b.e) + ", swan identity = " + std::to_string(e_swan)});

    const bool good = b.sim.good_regime();
    std::string cls = good ? "good" : "non-good:";
    if (!good) {
        blowup::details::visit(b.sim.tree, [&](const blowup::BlowupNode& n) {
            if (!n.chart_consistent()) cls += " chart-mismatch@" + n.label;
            if (n.origin == blowup::Origin::OffOrigin && !n.clean) cls += " off-origin@" + n.label;
        });
    }
    out.push_back({"simulator_equals_r_prime", !good || b.sim.r_x == b.trace.total,
                   "r_x = " + std::to_string(b.sim.r_x) + ", r' = " + std::to_string(b.trace.total) + " (" + cls + ")"});

    out.push_back({"kato_bound", b.sim.r_x <= b.kato_bound && b.trace.total <= b.kato_bound,
                   "r_x = " + std::to_string(b.sim.r_x) + ", r' = " + std::to_string(b.trace.total) +
                       ", bound = " + std::to_string(b.kato_bound)});

    out.push_back({"witness", reduce::witness_holds(r.f, b.rep), "f - g - beta(h) is constant"});

    const bool same = b.rep.pg == q.rep.pg && b.sw1 == q.sw1 && b.sw2 == q.sw2 && b.swE == q.swE &&
                      b.trace.total == q.trace.total && b.sim.r_x == q.sim.r_x;
    out.push_back({"perturbation_invariance", same, "h = " + r.h.to_string()});
    return out;
}

inline bool all_pass(const std::vector<Verdict>& v) {
    return std::all_of(v.begin(), v.end(), [](const Verdict& x) { return x.pass; });
}

// ---------------------------------------------------------------------------
// Serialization

inline json to_json(const StairSeq& s) {
    json a = json::array();
    for (const auto& c : s.points()) a.push_back({c.a, c.b});
    return a;
}

inline json to_json(const blowup::BlowupNode& n) {
    json j;
    j["label"] = n.label;
    j["field"] = n.field;
    j["type"] = to_string(n.t);
    j["pg"] = to_json(n.pg);
    j["e"] = n.e;
    j["mu"] = n.mu;
    j["clean"] = n.clean;
    j["orbit"] = n.orbit;
    j["subtotal"] = n.subtotal;
    j["precision_used"] = n.precision_used;
    j["constant_added"] = n.constant_added;
    if (n.sw1) j["sw_t1"] = *n.sw1;
    if (n.sw2) j["sw_t2"] = *n.sw2;
    if (n.swE) j["sw_e"] = *n.swE;
    if (n.predicted_pg) j["chart_consistent"] = n.chart_consistent();
    j["children"] = json::array();
    for (const auto& c : n.children) j["children"].push_back(to_json(c));
    return j;
}

inline json to_json(const blowup::SimResult& r) {
    return json{{"r_x", r.r_x},
                {"depth", r.depth()},
                {"good_regime", r.good_regime()},
                {"precision", r.precision},
                {"flags",
                 {{"constant_added_anywhere", r.flags.constant_added_anywhere},
                  {"partial_roots", r.flags.partial_roots},
                  {"precision_escalations", r.flags.precision_escalations},
                  {"max_root_degree", r.flags.max_root_degree}}},
                {"tree", to_json(r.tree)}};
}

inline json to_json(const Invariants& inv) {
    json steps = json::array();
    for (const auto& s : inv.trace.steps)
        steps.push_back({{"input", to_json(s.input)}, {"type", to_string(s.type)}, {"e", s.e}, {"mu", s.mu}, {"level", s.level}});
    return json{{"good_rep",
                 {{"g", inv.rep.g.to_string()},
                  {"h", inv.rep.h.to_string()},
                  {"constant_shift", inv.rep.constant_shift.to_string()},
                  {"constant_added", inv.rep.constant_added},
                  {"quadrant_ok", inv.rep.quadrant_ok},
                  {"reductions", inv.rep.reductions}}},
                {"pg", to_json(inv.rep.pg)},
                {"ess", inv.ess ? to_json(*inv.ess) : json::array()},
                {"swan", {{"T1", inv.sw1}, {"T2", inv.sw2}, {"E", inv.swE}}},
                {"e", inv.e},
                {"r_prime", {{"total", inv.trace.total}, {"steps", steps}}},
                {"r_prime_closed", inv.r_prime_closed},
                {"kato_bound", inv.kato_bound},
                {"simulation", to_json(inv.sim)}};
}

inline json to_json(const Report& r) {
    json v = json::array();
    for (const auto& x : verdicts(r)) v.push_back({{"name", x.name}, {"pass", x.pass}, {"detail", x.detail}});
    return json{{"input",
                 {{"field", r.spec.field},
                  {"type", to_string(r.spec.t)},
                  {"expr", r.spec.expr},
                  {"parsed", r.f.to_string()},
                  {"mode", blowup::to_string(r.spec.sim.mode)},
                  {"seed", r.spec.seed}}},
                {"invariants", to_json(r.base)},
                {"perturbation", {{"h", r.h.to_string()}, {"invariants", to_json(r.perturbed)}}},
                {"verdicts", v},
                {"pass", all_pass(verdicts(r))}};
}

inline json to_json(const euler::EulerReport& e) {
    return json{{"sw_self", e.sw_self}, {"sw_klog", e.sw_klog}, {"delta", e.delta}};
}

inline euler::SurfaceConfig surface_from_json(const json& j) {
    euler::SurfaceConfig cfg;
    try {
        for (const auto& c : j.at("components")) cfg.components.push_back({c.at("name").get<std::string>(), c.at("sw").get<std::int64_t>()});
        cfg.intersections = j.at("intersections").get<std::vector<std::vector<std::int64_t>>>();
        cfg.klog = j.at("klog").get<std::vector<std::int64_t>>();
        cfg.r_sum = j.value("r_sum", std::int64_t{0});
    } catch (const json::exception& ex) {
        throw euler::ConfigError(std::string("malformed surface config: ") + ex.what());
    }
    cfg.validate();
    return cfg;
}

/// Graphviz rendering, one node per blow-up center.
inline std::string to_dot(const blowup::BlowupNode& root) {
    std::ostringstream os;
    os << "digraph blowup {\n  node [shape=box, fontname=\"monospace\"];\n";
    int next = 0;
    std::function<int(const blowup::BlowupNode&)> emit = [&](const blowup::BlowupNode& n) {
        const int id = next++;
        os << "  n" << id << " [label=\"" << n.label << "\\ntype " << to_string(n.t) << "  pg " << n.pg.to_string()
           << "\\ne=" << n.e << "  mu=" << n.mu;
        if (n.orbit > 1) os << "  x" << n.orbit;
        os << "\"" << (n.clean ? ", style=dashed" : "") << "];\n";
        for (const auto& c : n.children) {
            const int cid = emit(c);
            os << "  n" << id << " -> n" << cid << ";\n";
        }
        return id;
    };
    emit(root);
    os << "}\n";
    return os.str();
}

}  // namespace ramify::report

#endif  // RAMIFY_REPORT_HPP
