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
 * @file corpus.hpp
 * @brief Seeded differential runs over random staircases or random polynomials.
 *
 * Items are generated from (seed, index) alone and evaluated on a thread pool;
 * the summary is assembled in index order, so it is byte-identical across runs.
 */

#ifndef RAMIFY_CORPUS_HPP
#define RAMIFY_CORPUS_HPP

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "report.hpp"

namespace ramify::corpus {

using report::json;

enum class Kind { Staircase, Poly };

struct Params {
    Kind kind = Kind::Staircase;
    std::uint64_t seed = 1;
    std::size_t count = 1000;
    /// Evaluate r' with the printed J_a rule instead of the corrected one.
    bool mutant = false;
    int max_k = 6;
    int bound = 40;
    std::vector<std::uint32_t> primes{2, 3, 5};
    int max_pole = 9;
    int max_terms = 4;
    blowup::SimConfig sim = [] {
        blowup::SimConfig c;
        c.depth_cap = 128;
        return c;
    }();
    unsigned threads = 0;
};

struct Check {
    std::string name;
    bool pass;
};

struct ItemResult {
    std::string input;
    std::vector<Check> checks;
    std::optional<std::string> error;
    std::optional<std::string> discrepancy;
};

inline std::mt19937_64 item_rng(std::uint64_t seed, std::size_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    return std::mt19937_64(seq);
}

// --- staircase mode -------------------------------------------------------

inline std::vector<Check> staircase_checks(const StairSeq& A, PointType t, polygon::JaRule rule) {
    const std::int64_t rec = polygon::r_prime_total(A, t, rule);
    const std::int64_t closed = polygon::r_prime_closed(A, t);
    return {{"closed_form", rec == closed},
            {"ess_invariance", rec == polygon::r_prime_total(polygon::ess(A), t, rule)},
            {"kato_bound", closed <= polygon::kato_bound(A, t)}};
}

inline std::string describe(const StairSeq& A, PointType t) { return A.to_string() + " type " + to_string(t); }

/// All quadrant staircases with at most `max_len` corners and coordinates in [-r, r], smallest first.
inline std::vector<std::pair<StairSeq, PointType>> small_staircases(int max_len, int r) {
    std::vector<std::vector<Corner>> shapes{{}};
    std::vector<std::vector<Corner>> all;
    for (int len = 1; len <= max_len; ++len) {
        std::vector<std::vector<Corner>> next;
        for (const auto& s : shapes)
            for (int a = -r; a <= r; ++a)
                for (int b = -r; b <= r; ++b) {
                    if (!s.empty() && (a <= s.back().a || b <= s.back().b)) continue;
                    auto t = s;
                    t.push_back({a, b});
                    next.push_back(t);
                }
        all.insert(all.end(), next.begin(), next.end());
        shapes = std::move(next);
    }
    auto key = [](const std::vector<Corner>& s) {
        std::int64_t weight = 0;
        std::vector<std::int64_t> abs_coords, coords;
        for (const auto& c : s) {
            weight += std::abs(c.a) + std::abs(c.b);
            abs_coords.insert(abs_coords.end(), {std::abs(c.a), std::abs(c.b)});
            coords.insert(coords.end(), {c.a, c.b});
        }
        const std::int64_t dep = s.back().a - s.front().a + s.back().b - s.front().b;
        return std::make_tuple(s.size(), dep, weight, abs_coords, coords);
    };
    std::stable_sort(all.begin(), all.end(), [&](const auto& x, const auto& y) { return key(x) < key(y); });
    std::vector<std::pair<StairSeq, PointType>> out;
    for (const auto& s : all) {
        StairSeq A(s);
        if (!polygon::quadrant_ok(A)) continue;
        if (A.front().b == 0) out.emplace_back(A, PointType::I);
        out.emplace_back(A, PointType::II);
    }
    return out;
}

inline std::optional<std::string> minimize_staircase(const std::string& check, polygon::JaRule rule) {
    for (const auto& [A, t] : small_staircases(3, 4)) {
        std::vector<Check> checks;
        try {
            checks = staircase_checks(A, t, rule);
        } catch (const std::exception&) {
            continue;
        }
        for (const auto& c : checks)
            if (c.name == check && !c.pass) return describe(A, t);
    }
    return std::nullopt;
}

inline ItemResult staircase_item(const Params& p, std::size_t i) {
    auto rng = item_rng(p.seed, i);
    const PointType t = i % 2 == 0 ? PointType::I : PointType::II;
    const StairSeq A = report::random_staircase(rng, p.max_k, p.bound, t);
    ItemResult out{describe(A, t), {}, {}, {}};
    try {
        out.checks = staircase_checks(A, t, p.mutant ? polygon::JaRule::Printed : polygon::JaRule::Corrected);
    } catch (const std::exception& ex) {
        out.error = out.input + ": " + ex.what();
    }
    return out;
}

// --- polynomial mode ------------------------------------------------------

struct PolyInput {
    std::string field;
    PointType t;
    std::string expr;
};

inline PolyInput poly_input(const Params& p, std::size_t i) {
    auto rng = item_rng(p.seed, i);
    const std::uint32_t prime = p.primes[i % p.primes.size()];
    const PointType t = (i / p.primes.size()) % 2 == 0 ? PointType::II : PointType::I;
    const auto F = gf::FieldCtx::make(prime, 1);
    return {F->spec(), t, report::random_poly(rng, F, t, p.max_pole, p.max_terms).to_string()};
}

inline std::string describe(const PolyInput& in) { return "F" + in.field + " type " + to_string(in.t) + " " + in.expr; }

inline ItemResult poly_eval(const Params& p, const PolyInput& in, std::uint64_t seed) {
    ItemResult out{describe(in), {}, {}, {}};
    try {
        report::InputSpec spec{in.field, in.t, in.expr, p.sim, seed};
        const auto rep = report::run_report(spec);
        for (const auto& v : report::verdicts(rep)) out.checks.push_back({v.name, v.pass});
        const auto& b = rep.base;
        if (!b.sim.good_regime() && b.sim.r_x != b.trace.total)
            out.discrepancy = describe(in) + ": r_x = " + std::to_string(b.sim.r_x) + ", r' = " + std::to_string(b.trace.total);
    } catch (const std::exception& ex) {
        out.error = describe(in) + ": " + ex.what();
    }
    return out;
}

/// Greedy term deletion while the named check keeps failing.
inline std::string minimize_poly(const Params& p, PolyInput in, const std::string& check, std::uint64_t seed) {
    auto fails = [&](const PolyInput& x) {
        const auto r = poly_eval(p, x, seed);
        return std::any_of(r.checks.begin(), r.checks.end(), [&](const Check& c) { return c.name == check && !c.pass; });
    };
    bool shrunk = true;
    while (shrunk) {
        shrunk = false;
        const auto F = gf::parse_field_spec(in.field);
        const auto f = parse_poly(in.expr, F);
        if (f.size() <= 1) break;
        for (const auto& [e, c] : f.terms()) {
            LaurentPoly g = f;
            g.add_term(e, -c);
            PolyInput candidate{in.field, in.t, g.to_string()};
            if (fails(candidate)) {
                in = candidate;
                shrunk = true;
                break;
            }
        }
    }
    return describe(in);
}

inline ItemResult poly_item(const Params& p, std::size_t i) { return poly_eval(p, poly_input(p, i), p.seed + i); }

// --- driver ---------------------------------------------------------------

inline std::vector<ItemResult> evaluate(const Params& p) {
    std::vector<ItemResult> results(p.count);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < p.count; i = next++)
            results[i] = p.kind == Kind::Staircase ? staircase_item(p, i) : poly_item(p, i);
    };
    unsigned n = p.threads ? p.threads : std::max(1u, std::thread::hardware_concurrency());
    n = static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(p.count, 1)));
    std::vector<std::thread> pool;
    for (unsigned k = 0; k < n; ++k) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    return results;
}

inline json corpus_run(const Params& p) {
    if (p.count < 1) throw std::invalid_argument("corpus count must be >= 1");
    const auto results = evaluate(p);

    std::map<std::string, std::pair<std::size_t, std::size_t>> tally;
    std::vector<std::string> order;
    std::map<std::string, std::size_t> first_failure;
    json errors = json::array(), discrepancies = json::array();
    for (std::size_t i = 0; i < results.size(); ++i) {
        const auto& r = results[i];
        if (r.error) errors.push_back(*r.error);
        if (r.discrepancy) discrepancies.push_back(*r.discrepancy);
        for (const auto& c : r.checks) {
            if (!tally.count(c.name)) order.push_back(c.name);
            auto& [pass, fail] = tally[c.name];
            (c.pass ? pass : fail)++;
            if (!c.pass && !first_failure.count(c.name)) first_failure[c.name] = i;
        }
    }

    json checks = json::object(), counterexamples = json::object();
    for (const auto& name : order) checks[name] = {{"pass", tally[name].first}, {"fail", tally[name].second}};
    for (const auto& name : order) {
        if (!first_failure.count(name)) continue;
        const std::size_t i = first_failure[name];
        json cx{{"first", results[i].input}};
        if (p.kind == Kind::Staircase) {
            if (auto m = minimize_staircase(name, p.mutant ? polygon::JaRule::Printed : polygon::JaRule::Corrected)) cx["minimized"] = *m;
        } else {
            cx["minimized"] = minimize_poly(p, poly_input(p, i), name, p.seed + i);
        }
        counterexamples[name] = cx;
    }

    const bool pass = first_failure.empty() && errors.empty();
    json out{{"kind", p.kind == Kind::Staircase ? "staircase" : "poly"}, {"seed", p.seed}, {"count", p.count}};
    if (p.mutant) out["mutant"] = "printed-ja";
    out["checks"] = checks;
    if (p.kind == Kind::Poly) out["non_good_discrepancies"] = discrepancies;
    out["errors"] = errors;
    out["counterexamples"] = counterexamples;
    out["pass"] = pass;
    return out;
}

}  // namespace ramify::corpus

#endif  // RAMIFY_CORPUS_HPP
