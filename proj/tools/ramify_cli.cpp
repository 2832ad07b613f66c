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

// ramify: command line front end.
//   ramify report   --field 3^1 --type II "t1^-2*t2"
//   ramify simulate --field 2^1 --type II --mode sweep "t1^-3*t2^6 + t1^-3*t2^3"
//   ramify corpus   --kind staircase --seed 1 --count 1000
//   ramify euler    samples/p2_line.json
// Exit status: 0 all verdicts pass, 2 a verdict failed, 1 operational error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "ramify/corpus.hpp"
#include "ramify/report.hpp"

using namespace ramify;
using report::json;

namespace {

constexpr int kPass = 0;
constexpr int kError = 1;
constexpr int kVerdictFailure = 2;

struct SimOptions {
    std::string mode = "candidates";
    unsigned ext_cap = 4;
    unsigned sweep_degree = 2;
    unsigned depth_cap = 128;
    std::int64_t precision = 16;

    void attach(CLI::App* app) {
        app->add_option("--mode", mode, "Off-origin search: candidates or sweep")
            ->check(CLI::IsMember({"candidates", "sweep"}));
        app->add_option("--ext-cap", ext_cap, "Largest extension degree searched for roots")->check(CLI::PositiveNumber);
        app->add_option("--sweep-degree", sweep_degree, "Extension degree covered by sweep mode")->check(CLI::PositiveNumber);
        app->add_option("--depth-cap", depth_cap, "Maximum blow-up depth")->check(CLI::PositiveNumber);
        app->add_option("--precision", precision, "Initial series truncation order")->check(CLI::PositiveNumber);
    }

    blowup::SimConfig config() const {
        blowup::SimConfig c;
        c.mode = mode == "sweep" ? blowup::Mode::Sweep : blowup::Mode::Candidates;
        c.ext_cap = ext_cap;
        c.sweep_degree = sweep_degree;
        c.depth_cap = depth_cap;
        c.precision.n_terms = precision;
        return c;
    }
};

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

void print_node(const blowup::BlowupNode& n, int indent) {
    std::cout << std::string(static_cast<std::size_t>(indent) * 2, ' ') << n.label << "  type " << to_string(n.t) << "  pg "
              << n.pg.to_string() << "  e=" << n.e << "  mu=" << n.mu;
    if (n.orbit > 1) std::cout << "  orbit " << n.orbit;
    if (n.clean) std::cout << "  clean";
    std::cout << "\n";
    for (const auto& c : n.children) print_node(c, indent + 1);
}

void print_report(const report::Report& r) {
    const auto& b = r.base;
    std::cout << "f          = " << r.f.to_string() << "  over F" << r.spec.field << ", type " << to_string(r.spec.t) << "\n"
              << "good rep g = " << b.rep.g.to_string() << (b.rep.constant_added ? "  (constant added)" : "") << "\n"
              << "pg         = " << b.rep.pg.to_string() << "\n"
              << "ess        = " << (b.ess ? b.ess->to_string() : "()") << "\n"
              << "swan       = T1 " << b.sw1 << ", T2 " << b.sw2 << ", E " << b.swE << "\n"
              << "r'         = " << b.trace.total << " (closed form " << b.r_prime_closed << ")\n"
              << "r_x        = " << b.sim.r_x << " (depth " << b.sim.depth() << ", " << (b.sim.good_regime() ? "good" : "non-good")
              << ")\n"
              << "bound      = " << b.kato_bound << "\n";
    for (const auto& v : report::verdicts(r))
        std::cout << (v.pass ? "  PASS  " : "  FAIL  ") << v.name << "  [" << v.detail << "]\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Ramification invariants of Artin-Schreier characters on surfaces"};
    app.require_subcommand(1);

    std::string field = "2^1", type = "II", expr, dot_path;
    bool as_json = false;
    std::uint64_t seed = 1;
    SimOptions sim;

    auto* rep = app.add_subcommand("report", "All invariants of one input, with verdicts");
    auto* simc = app.add_subcommand("simulate", "Blow-up simulation of one input");
    for (auto* sub : {rep, simc}) {
        sub->add_option("--field", field, "Field as p^k")->capture_default_str();
        sub->add_option("--type", type, "Point type I or II")->check(CLI::IsMember({"I", "II"}))->capture_default_str();
        sub->add_option("expr", expr, "Laurent polynomial in t1, t2")->required();
        sub->add_flag("--json", as_json, "Emit JSON");
        sub->add_option("--dot", dot_path, "Write the blow-up tree as Graphviz DOT");
        sub->add_option("--seed", seed, "Seed for the perturbation check")->capture_default_str();
        sim.attach(sub);
    }

    auto* cor = app.add_subcommand("corpus", "Seeded differential run");
    std::string kind = "staircase";
    std::size_t count = 1000;
    bool mutant = false;
    cor->add_option("--kind", kind, "staircase or poly")->check(CLI::IsMember({"staircase", "poly"}))->capture_default_str();
    cor->add_option("--seed", seed)->capture_default_str();
    cor->add_option("--count", count)->check(CLI::PositiveNumber)->capture_default_str();
    cor->add_flag("--json", as_json, "Emit JSON (default is a short summary)");
    cor->add_flag("--mutant", mutant)->group("");
    sim.attach(cor);

    auto* eul = app.add_subcommand("euler", "Euler characteristic delta from a surface config");
    std::string config_path;
    eul->add_option("config", config_path, "JSON surface config")->required()->check(CLI::ExistingFile);
    eul->add_flag("--json", as_json, "Emit JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kPass : kError;
    }

    try {
        if (rep->parsed() || simc->parsed()) {
            report::InputSpec spec{field, report::parse_type(type), expr, sim.config(), seed};
            if (rep->parsed()) {
                const auto r = report::run_report(spec);
                if (!dot_path.empty()) write_file(dot_path, report::to_dot(r.base.sim.tree));
                if (as_json)
                    std::cout << report::to_json(r).dump(2) << "\n";
                else
                    print_report(r);
                return report::all_pass(report::verdicts(r)) ? kPass : kVerdictFailure;
            }
            const auto F = gf::parse_field_spec(field);
            const auto f = parse_poly(expr, F);
            const auto res = blowup::simulate(f, spec.t, spec.sim);
            if (!dot_path.empty()) write_file(dot_path, report::to_dot(res.tree));
            if (as_json) {
                std::cout << report::to_json(res).dump(2) << "\n";
            } else {
                std::cout << "r_x = " << res.r_x << "  depth " << res.depth() << "\n";
                print_node(res.tree, 0);
            }
            return kPass;
        }
        if (cor->parsed()) {
            corpus::Params p;
            p.kind = kind == "poly" ? corpus::Kind::Poly : corpus::Kind::Staircase;
            p.seed = seed;
            p.count = count;
            p.mutant = mutant;
            p.sim = sim.config();
            const json out = corpus::corpus_run(p);
            if (as_json) {
                std::cout << out.dump(2) << "\n";
            } else {
                for (const auto& [name, c] : out["checks"].items())
                    std::cout << name << ": " << c["pass"] << "/" << (c["pass"].get<std::size_t>() + c["fail"].get<std::size_t>()) << "\n";
                for (const auto& [name, c] : out["counterexamples"].items())
                    std::cout << "counterexample " << name << ": " << c.value("minimized", c["first"].get<std::string>()) << "\n";
                if (!out["errors"].empty()) std::cout << out["errors"].size() << " errors\n";
            }
            return out["pass"].get<bool>() ? kPass : kVerdictFailure;
        }
        if (eul->parsed()) {
            std::ifstream in(config_path);
            const auto cfg = report::surface_from_json(json::parse(in));
            const auto r = euler::euler_delta(cfg);
            if (as_json)
                std::cout << report::to_json(r).dump(2) << "\n";
            else
                std::cout << "(Sw,Sw) = " << r.sw_self << "\n(Sw,K^log) = " << r.sw_klog << "\nsum r_x = " << cfg.r_sum
                          << "\ndelta = " << r.delta << "\n";
            return kPass;
        }
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kError;
    }
    return kError;
}
