// SPDX-License-Identifier: Apache-2.0
#include "ldm/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "ldm/errors.hpp"
#include "ldm/exact.hpp"
#include "ldm/json_io.hpp"
#include "ldm/verify.hpp"

namespace ldm::cli {

namespace {

using io::Json;

enum class Format { json, csv };

struct Grid {
    double L_min = 0.0;
    double L_max = 0.0;
    int steps = 0;

    [[nodiscard]] double at(int i) const {
        return steps == 1 ? L_min : L_min + (L_max - L_min) * i / (steps - 1);
    }
};

struct RunConfig {
    std::string command;
    double gamma = 1.0;
    double rho = 0.5;
    std::optional<double> L;
    std::string bc_name = "neumann";
    std::optional<double> ell;
    std::vector<double> Q;
    std::string grid;
    std::string input_path;
    std::string output_path;
    std::string format_name = "json";
    std::uint64_t seed = 1;
    double inject_fault = 0.0;

    [[nodiscard]] Format format() const { return format_name == "csv" ? Format::csv : Format::json; }
    [[nodiscard]] BoundaryCondition bc() const { return parse_boundary_condition(bc_name); }

    [[nodiscard]] ModelParams params() const {
        if (!L) throw ParameterError("--L is required for '" + command + "'");
        return ModelParams::make(gamma, rho, *L);
    }
};

std::string num(double x) { return fmt::format("{:.12g}", x); }

Grid parse_grid(const std::string& text) {
    Grid g;
    std::istringstream is(text);
    is.imbue(std::locale::classic());
    char c1 = 0, c2 = 0;
    if (text.empty() || !(is >> g.L_min >> c1 >> g.L_max >> c2 >> g.steps) || c1 != ':' || c2 != ':' ||
        !is.eof()) {
        throw ParameterError("--grid expects Lmin:Lmax:steps");
    }
    if (!(g.L_min > 0.0) || g.L_max < g.L_min || g.steps < 1) {
        throw ParameterError("--grid needs 0 < Lmin <= Lmax and steps >= 1");
    }
    return g;
}

Json range_text(const exact::GroundState& gs) {
    Json out = Json::array();
    for (const auto& f : gs.families) {
        if (f.range.full_circle) {
            out.push_back("all a mod L");
        } else {
            out.push_back(fmt::format("[{}, {}]", num(f.range.lo), num(f.range.hi)));
        }
    }
    return out;
}

int cmd_energy(const RunConfig& cfg, std::ostream& out) {
    if (cfg.input_path.empty()) throw ParameterError("'energy' needs --input FILE");
    std::ifstream in(cfg.input_path);
    if (!in) throw ParseError("cannot open " + cfg.input_path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    const auto set = io::parse_interval_set(buffer.str());
    if (cfg.L && std::abs(*cfg.L - set.box_length()) > default_merge_tol(set.box_length())) {
        throw ParameterError("--L disagrees with the box length in " + cfg.input_path);
    }
    const auto p = ModelParams::make(cfg.gamma, cfg.rho, set.box_length());
    const auto bc = cfg.bc();
    const auto e = energy(set, p, bc);
    if (cfg.format() == Format::csv) {
        out << "perimeter,self_term,background_term,moment_correction,total\n";
        out << e.perimeter << ',' << num(e.self_term) << ',' << num(e.background_term) << ','
            << num(e.moment_correction) << ',' << num(e.total) << '\n';
    } else {
        Json doc = io::to_json(e);
        doc["params"] = io::to_json(p);
        doc["bc"] = std::string(to_string(bc));
        out << doc.dump(2) << '\n';
    }
    return kSuccess;
}

void require_neutral(const RunConfig& cfg, const ModelParams& p) {
    if (cfg.ell && std::abs(*cfg.ell - p.neutral_mass()) > 1e-12 * p.L) {
        throw ParameterError("'" + cfg.command + "' solves the neutral case ell = rho L; use 'excess'");
    }
}

int cmd_solve(const RunConfig& cfg, std::ostream& out) {
    const auto p = cfg.params();
    require_neutral(cfg, p);
    const auto bc = cfg.bc();
    const auto gs = exact::ground_state(p, bc);
    if (cfg.format() == Format::csv) {
        out << "bc,energy,N,left,right\n";
        for (const auto& f : gs.families) {
            for (const auto& [l, r] : f.base.endpoints()) {
                out << to_string(bc) << ',' << num(gs.energy) << ',' << f.N << ',' << num(l) << ','
                    << num(r) << '\n';
            }
        }
        return kSuccess;
    }
    Json doc = io::to_json(gs);
    doc["params"] = io::to_json(p);
    doc["translation_family"] = range_text(gs);
    doc["asymptotics"] = io::to_json(exact::asymptotics(p));
    if (bc == BoundaryCondition::dirichlet) {
        Json report = Json::array();
        for (const auto& s : exact::dirichlet_extended_report(p, gs.optimal_Ns.front())) {
            report.push_back({{"a", s.a},
                              {"inside_box", s.inside_box},
                              {"energy_wrapped", s.energy_wrapped},
                              {"energy_relative_perimeter", s.energy_relative_perimeter},
                              {"deviation", s.deviation}});
        }
        doc["extended_range_report"] = std::move(report);
    }
    out << doc.dump(2) << '\n';
    return kSuccess;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out) {
    if (cfg.grid.empty()) throw ParameterError("'sweep' needs --grid Lmin:Lmax:steps");
    const Grid grid = parse_grid(cfg.grid);
    const auto base = ModelParams::make(cfg.gamma, cfg.rho, grid.L_min);
    const double e_inf = exact::asymptotics(base).e_inf;
    Json rows = Json::array();
    if (cfg.format() == Format::csv) out << "L,e,e_per_L,N,remainder\n";
    for (int i = 0; i < grid.steps; ++i) {
        const double L = grid.at(i);
        const auto p = base.with_length(L);
        const auto ns = exact::optimal_N(p);
        const double e = exact::energy_of_N(p, ns.front());
        const double rem = L * L * (e / L - e_inf);
        if (cfg.format() == Format::csv) {
            out << num(L) << ',' << num(e) << ',' << num(e / L) << ',' << ns.front() << ',' << num(rem)
                << '\n';
        } else {
            rows.push_back({{"L", L}, {"e", e}, {"e_per_L", e / L}, {"N", ns.front()}, {"optimal_Ns", ns},
                            {"remainder", rem}});
        }
    }
    if (cfg.format() == Format::json) out << rows.dump(2) << '\n';
    return kSuccess;
}

int cmd_excess(const RunConfig& cfg, std::ostream& out) {
    const auto p = cfg.params();
    std::vector<double> charges = cfg.Q;
    if (cfg.ell) charges.push_back(*cfg.ell - p.neutral_mass());
    if (charges.empty()) throw ParameterError("'excess' needs --Q (comma separated) or --ell");
    const auto asym = exact::asymptotics(p);
    std::vector<exact::ExcessResult> results;
    for (double Q : charges) results.push_back(exact::excess_ground_state(p, Q));

    if (cfg.format() == Format::csv) {
        out << "Q,lower_bound,exact,N,limit_prediction\n";
        for (const auto& r : results) {
            out << num(r.Q) << ',' << num(r.lower_bound) << ',' << (r.exact ? "true" : "false") << ','
                << r.N << ',' << num(asym.e_inf - 0.25 * p.gamma * r.Q * r.Q) << '\n';
        }
        return kSuccess;
    }
    Json rows = Json::array();
    for (const auto& r : results) {
        Json row = io::to_json(r);
        row["limit_prediction"] = asym.e_inf - 0.25 * p.gamma * r.Q * r.Q;
        row["lower_bound_per_L"] = r.lower_bound / p.L;
        rows.push_back(std::move(row));
    }
    out << Json{{"params", io::to_json(p)}, {"rows", std::move(rows)}}.dump(2) << '\n';
    return kSuccess;
}

int cmd_compare_bc(const RunConfig& cfg, std::ostream& out) {
    const auto p = cfg.params();
    require_neutral(cfg, p);
    std::vector<double> values;
    Json per_bc = Json::array();
    for (auto bc : kAllBoundaryConditions) {
        const auto gs = exact::ground_state(p, bc);
        values.push_back(gs.energy);
        double family_energy = std::numeric_limits<double>::infinity();
        for (const auto& f : gs.families) {
            family_energy = std::min(family_energy, energy(f.base, p, bc).total);
        }
        values.push_back(family_energy);
        per_bc.push_back({{"bc", std::string(to_string(bc))},
                          {"energy", gs.energy},
                          {"family_energy", family_energy},
                          {"optimal_Ns", gs.optimal_Ns}});
    }
    double worst = 0.0;
    for (double a : values) {
        for (double b : values) worst = std::max(worst, std::abs(a - b) / std::abs(b));
    }
    const bool ok = worst <= 1e-12;
    if (cfg.format() == Format::csv) {
        out << "bc,energy,family_energy\n";
        for (const auto& row : per_bc) {
            out << row["bc"].get<std::string>() << ',' << num(row["energy"].get<double>()) << ','
                << num(row["family_energy"].get<double>()) << '\n';
        }
    } else {
        out << Json{{"params", io::to_json(p)},
                    {"results", std::move(per_bc)},
                    {"max_pairwise_rel_diff", worst},
                    {"passed", ok}}
                   .dump(2)
            << '\n';
    }
    return ok ? kSuccess : kVerificationFailed;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
    verify::Options opt;
    opt.seed = cfg.seed;
    opt.closed_form_perturbation = cfg.inject_fault;
    const auto summary = verify::run(opt);
    if (cfg.format() == Format::csv) {
        out << "check,passed,samples,worst_residual,tolerance\n";
        for (const auto& c : summary.checks) {
            out << c.name << ',' << (c.passed ? "true" : "false") << ',' << c.samples << ','
                << num(c.worst) << ',' << num(c.tolerance) << '\n';
        }
    } else {
        out << verify::to_json(summary).dump(2) << '\n';
    }
    return summary.passed ? kSuccess : kVerificationFailed;
}

void add_options(CLI::App& sub, RunConfig& cfg) {
    sub.add_option("--gamma", cfg.gamma, "interaction strength (> 0)");
    sub.add_option("--rho", cfg.rho, "background density in (0, 1)");
    sub.add_option("--L", cfg.L, "box length");
    sub.add_option("--bc", cfg.bc_name, "boundary condition")
        ->check(CLI::IsMember({"neumann", "dirichlet", "periodic"}));
    sub.add_option("--ell", cfg.ell, "mass |E|");
    sub.add_option("--Q", cfg.Q, "excess charges, comma separated")->delimiter(',');
    sub.add_option("--grid", cfg.grid, "Lmin:Lmax:steps");
    sub.add_option("--input", cfg.input_path, "interval set JSON");
    sub.add_option("--format", cfg.format_name, "output format")->check(CLI::IsMember({"json", "csv"}));
    sub.add_option("--seed", cfg.seed, "random seed");
    sub.add_option("--out", cfg.output_path, "output file (default: stdout)");
    sub.add_option("--inject-fault", cfg.inject_fault)->group("");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"One-dimensional liquid drop model: energies, exact ground states and verification"};
    app.require_subcommand(1);
    RunConfig cfg;
    const std::pair<const char*, const char*> commands[] = {
        {"energy", "closed-form energy of an interval set (--input)"},
        {"solve", "exact neutral ground state"},
        {"sweep", "ground-state energies over a grid of box lengths"},
        {"excess", "ground states with excess charge Q"},
        {"compare-bc", "ground states under all three boundary conditions"},
        {"verify", "run the self-verification suite"},
    };
    for (const auto& [name, help] : commands) add_options(*app.add_subcommand(name, help), cfg);

    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kUsageError;
    }
    cfg.command = app.get_subcommands().front()->get_name();

    try {
        std::ostringstream buffer;
        buffer.imbue(std::locale::classic());
        int code = kSuccess;
        if (cfg.command == "energy") code = cmd_energy(cfg, buffer);
        else if (cfg.command == "solve") code = cmd_solve(cfg, buffer);
        else if (cfg.command == "sweep") code = cmd_sweep(cfg, buffer);
        else if (cfg.command == "excess") code = cmd_excess(cfg, buffer);
        else if (cfg.command == "compare-bc") code = cmd_compare_bc(cfg, buffer);
        else code = cmd_verify(cfg, buffer);

        if (cfg.output_path.empty()) {
            out << buffer.str();
        } else {
            std::ofstream file(cfg.output_path);
            if (!file) throw ParameterError("cannot write " + cfg.output_path);
            file << buffer.str();
        }
        return code;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    }
}

}  // namespace ldm::cli
