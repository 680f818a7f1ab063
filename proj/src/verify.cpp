// SPDX-License-Identifier: Apache-2.0
#include "ldm/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ldm/exact.hpp"
#include "ldm/json_io.hpp"
#include "ldm/sampling.hpp"

namespace ldm::verify {

namespace {

class Check {
  public:
    Check(std::string name, double tolerance) {
        result_.name = std::move(name);
        result_.tolerance = tolerance;
    }

    void add(double residual) {
        if (std::isnan(residual)) residual = std::numeric_limits<double>::infinity();
        result_.worst = std::max(result_.worst, residual);
        ++result_.samples;
    }
    /// Records a pass/fail condition as residual 0 or +inf.
    void require(bool ok) { add(ok ? 0.0 : std::numeric_limits<double>::infinity()); }

    CheckResult finish() {
        result_.passed = result_.samples > 0 && result_.worst <= result_.tolerance;
        return result_;
    }

  private:
    CheckResult result_;
};

double rel(double a, double b) { return std::abs(a - b) / (1.0 + std::abs(b)); }

struct Suite {
    Options opt;
    sampling::Rng rng;
    Summary summary;

    explicit Suite(const Options& o) : opt(o), rng(o.seed) { summary.seed = o.seed; }

    double perturbed(double closed_form) const {
        return closed_form * (1.0 + opt.closed_form_perturbation);
    }

    void push(Check& c) { summary.checks.push_back(c.finish()); }

    void closed_form_vs_quadrature() {
        for (auto bc : kAllBoundaryConditions) {
            Check c("closed_form_vs_quadrature/" + std::string(to_string(bc)), 1e-8);
            Check s("quadrature_vs_semi_analytic/" + std::string(to_string(bc)), 1e-9);
            for (int i = 0; i < opt.samples; ++i) {
                const auto p = sampling::random_params(rng, 2.0, 12.0);
                const bool torus = bc == BoundaryCondition::periodic && i % 2 == 1;
                const double mass = rng.uniform(0.05, 0.95) * p.L;
                const auto set = torus ? sampling::random_torus_set(rng, p.L, 6, mass)
                                       : sampling::random_segment_set(rng, p.L, 6, mass);
                const double closed = perturbed(energy(set, p, bc).total);
                const double quad = oracle::quad_energy(set, p, bc);
                const double semi = oracle::semi_analytic_energy(set, p, bc);
                c.add(rel(closed, quad));
                s.add(rel(quad, semi));
            }
            push(c);
            push(s);
        }
    }

    void algebraic_identities() {
        Check square("completed_square_identity", 1e-12);
        Check cubic("cubic_sum_identity", 1e-12);
        Check below_one("lower_bound_rho_below_one", 1e-12);
        Check below_one_eq("lower_bound_rho_below_one_equality", 1e-10);
        Check at_least_one("lower_bound_rho_at_least_one", 1e-12);
        Check at_least_one_eq("lower_bound_rho_at_least_one_equality", 1e-10);
        Check shifted("translation_invariant_bound", 1e-12);
        Check shifted_inv("translation_invariant_bound_invariance", 1e-10);
        for (int i = 0; i < opt.samples; ++i) {
            const double L = rng.uniform(2.0, 20.0);
            const auto set = sampling::random_segment_set(rng, L, 8);
            const int n = static_cast<int>(set.size());
            const auto m = moments(set);
            const double self = self_interaction(set);

            const double rho = rng.uniform(0.01, 1.0);
            const auto terms = completed_square_terms(set, rho);
            const double direct = self + rho * m.second;
            const double scale = std::abs(self) + rho * m.second + std::abs(terms.bulk_term);
            square.add(std::abs(terms.sum() - direct) / scale);
            square.require(terms.square_term >= 0.0);

            std::vector<double> q(static_cast<std::size_t>(rng.integer(1, 50)));
            double total = 0.0;
            for (auto& x : q) total += (x = rng.uniform(0.0, 3.0));
            cubic.add(std::abs(cubic_sum_identity_residual(q)) / std::max(1e-300, total * total * total));

            // Bounds with N >= number of pieces.
            const int N = n + rng.integer(0, 3);
            const double r1 = std::min(rng.uniform(0.01, 1.0), 0.999);
            const double mass3 = m.mass * m.mass * m.mass;
            const double bound1 = -mass3 / (12.0 * r1) * (1.0 - (1.0 - r1) * (1.0 - r1) / (1.0 * N * N));
            const double value1 = self + r1 * m.second;
            const double scale1 = std::abs(self) + r1 * m.second;
            below_one.add(std::max(0.0, bound1 - value1) / scale1);

            const double shifted_value = value1 - r1 / m.mass * m.first * m.first;
            shifted.add(std::max(0.0, bound1 - shifted_value) / scale1);
            const double a = rng.uniform(-0.5, 0.5) * L;
            const auto moved = IntervalSet::from_canonical(
                [&] {
                    auto pieces = set.pieces();
                    for (auto& pc : pieces) pc.center += a;
                    return pieces;
                }(),
                Domain::segment(4.0 * L));
            const auto mm = moments(moved);
            const double moved_value =
                self_interaction(moved) + r1 * mm.second - r1 / mm.mass * mm.first * mm.first;
            shifted_inv.add(std::abs(moved_value - shifted_value) / scale1);

            // Equality configuration on the whole line.
            std::vector<Interval> eq;
            for (int k = 1; k <= N; ++k) {
                eq.push_back({(2.0 * k - N - 1.0) * m.mass / (2.0 * r1 * N), m.mass / N});
            }
            const double wide = 4.0 * m.mass / r1 + 4.0;
            const auto eq_set = IntervalSet::from_canonical(eq, Domain::segment(wide));
            const auto em = moments(eq_set);
            const double eq_self = self_interaction(eq_set);
            below_one_eq.add(std::abs(eq_self + r1 * em.second - bound1) / (std::abs(eq_self) + r1 * em.second));

            const double r2 = rng.uniform(1.0, 3.0);
            const double bound2 = (r2 - 2.0) / 12.0 * mass3;
            at_least_one.add(std::max(0.0, bound2 - (self + r2 * m.second)) / (std::abs(self) + r2 * m.second));
            const auto centered = IntervalSet::from_canonical({{0.0, m.mass}}, Domain::segment(L));
            const auto cm = moments(centered);
            const double c_self = self_interaction(centered);
            at_least_one_eq.add(std::abs(c_self + r2 * cm.second - bound2) / (std::abs(c_self) + r2 * cm.second));
        }
        for (Check* c : {&square, &cubic, &below_one, &below_one_eq, &at_least_one, &at_least_one_eq, &shifted, &shifted_inv}) {
            push(*c);
        }
    }

    void reflection() {
        Check identity("reflection_identity", 1e-10);
        Check per("perimeter_complement_bound", 2.0);
        for (int i = 0; i < opt.samples; ++i) {
            const auto p = sampling::random_params(rng, 2.0, 12.0);
            auto set = sampling::random_segment_set(rng, p.L, 6);
            if (i % 3 != 0) {
                // Push the outer pieces onto the box boundary.
                auto ends = set.endpoints();
                if (i % 3 == 1 || i % 3 == 2) ends.front().first = -0.5 * p.L;
                if (i % 3 == 2) ends.back().second = 0.5 * p.L;
                set = make_interval_set(ends, Domain::segment(p.L));
            }
            const auto comp = complement(set);
            const auto mirrored = ModelParams::make(p.gamma, 1.0 - p.rho, p.L);
            const double e = energy(set, p, BoundaryCondition::neumann).total;
            const double ec = energy(comp, mirrored, BoundaryCondition::neumann).total;
            const int dper = perimeter(set) - perimeter(comp);
            identity.add(std::abs(e - ec - dper) / (1.0 + std::abs(e)));
            per.add(std::abs(dper));
        }
        push(identity);
        push(per);
    }

    void periodic_invariance() {
        Check c("periodic_translation_invariance", 1e-10);
        for (int i = 0; i < opt.samples; ++i) {
            const auto p = sampling::random_params(rng, 2.0, 12.0);
            const auto set = sampling::random_torus_set(rng, p.L, 5, p.neutral_mass());
            const double e0 = energy(set, p, BoundaryCondition::periodic).total;
            const auto moved = set.translated(rng.uniform(0.0, p.L));
            c.add(rel(energy(moved, p, BoundaryCondition::periodic).total, e0));
        }
        push(c);
    }

    std::vector<ModelParams> grid() const {
        std::vector<ModelParams> out;
        for (double gamma : {0.5, 1.0, 3.0}) {
            for (double rho : {0.2, 0.5, 0.7}) {
                for (double L : {1.0, 5.0, 12.0, 20.0}) out.push_back(ModelParams::make(gamma, rho, L));
            }
        }
        return out;
    }

    void exact_solutions() {
        Check bc_agree("ground_state_bc_agreement", 1e-12);
        Check of_n("energy_of_N_vs_closed_form", 1e-12);
        Check brute("optimal_N_vs_enumeration", 1e-12);
        Check family("minimizer_family_constancy", 1e-12);
        for (const auto& p : grid()) {
            const auto neumann = exact::ground_state(p, BoundaryCondition::neumann);
            for (auto bc : kAllBoundaryConditions) {
                const auto gs = exact::ground_state(p, bc);
                bc_agree.add(std::abs(gs.energy - neumann.energy) / neumann.energy);
                for (const auto& f : gs.families) {
                    bc_agree.add(std::abs(perturbed(energy(f.base, p, bc).total) - neumann.energy) /
                                 neumann.energy);
                }
            }
            for (int N = 1; N <= 20; ++N) {
                const double e = exact::energy_of_N(p, N);
                const auto set = exact::canonical_minimizer(p, N, p.neutral_mass());
                of_n.add(std::abs(perturbed(energy(set, p, BoundaryCondition::neumann).total) - e) / e);
            }
            double best = std::numeric_limits<double>::infinity();
            const int n_max = exact::search_limit(exact::continuous_optimal_N(p));
            for (int N = 1; N <= n_max; ++N) best = std::min(best, exact::energy_of_N(p, N));
            brute.add(std::abs(neumann.energy - best) / best);

            for (const auto& f : exact::ground_state(p, BoundaryCondition::periodic).families) {
                const auto circle = make_interval_set(f.base.endpoints(), Domain::torus(p.L));
                for (int k = 0; k < 20; ++k) {
                    const double a = p.L * k / 20.0 + 0.013 * p.L;
                    family.add(std::abs(energy(circle.translated(a), p, BoundaryCondition::periodic).total -
                                        neumann.energy) / neumann.energy);
                }
            }
            for (const auto& f : exact::ground_state(p, BoundaryCondition::dirichlet).families) {
                for (int k = 0; k <= 10; ++k) {
                    const double a = f.range.lo + (f.range.hi - f.range.lo) * k / 10.0;
                    const auto moved = f.base.translated(a);
                    family.add(std::abs(energy(moved, p, BoundaryCondition::dirichlet).total -
                                        neumann.energy) / neumann.energy);
                }
            }
        }
        push(bc_agree);
        push(of_n);
        push(brute);
        push(family);
    }

    void ties_and_limits() {
        Check ties("tie_structure", 1e-12);
        Check at_most_two("at_most_two_optimal_N", 0.0);
        Check nonneg("remainder_nonnegative", 1e-9);
        Check zero("remainder_zero_on_multiples_of_beta", 1e-9);
        Check f("f_profile_unimodal", 0.0);
        const std::pair<double, double> pairs[] = {{1.0, 0.5}, {2.0, 0.3}, {0.5, 0.8}};
        for (const auto& [gamma, rho] : pairs) {
            for (int N = 1; N <= 10; ++N) {
                const double L = exact::tie_length(gamma, rho, N);
                const auto p = ModelParams::make(gamma, rho, L);
                const auto opt_n = exact::classify_optimal_N(p);
                ties.require(opt_n.Ns == std::vector<int>{N, N + 1} && opt_n.exact_tie);
                ties.add(rel(exact::energy_of_N(p, N), exact::energy_of_N(p, N + 1)));
            }
            const auto base = ModelParams::make(gamma, rho, 1.0);
            const auto asym = exact::asymptotics(base);
            for (int k = 0; k < 10000; ++k) {
                const double L = asym.beta * (0.5 + 99.5 * k / 9999.0);
                const auto ns = exact::optimal_N(base.with_length(L));
                at_most_two.add(ns.size() <= 2 ? 0.0 : 1.0);
                nonneg.add(std::max(0.0, -exact::remainder(base, L)));
            }
            for (int N = 1; N <= 10; ++N) {
                zero.add(std::abs(exact::remainder(base, exact::zero_remainder_length(base, N))));
            }
        }
        const double f_min = std::pow(1.5, 2.0 / 3.0);
        int sign_changes = 0;
        double prev_diff = 0.0;
        for (int k = 0; k < 2000; ++k) {
            const double x0 = 0.05 + (20.0 - 0.05) * k / 2000.0;
            const double x1 = 0.05 + (20.0 - 0.05) * (k + 1) / 2000.0;
            const double diff = exact::f_profile(x1) - exact::f_profile(x0);
            if (k > 0 && (diff > 0.0) != (prev_diff > 0.0)) ++sign_changes;
            prev_diff = diff;
            f.add(std::max(0.0, f_min - exact::f_profile(x0) - 1e-15));
        }
        f.add(sign_changes == 1 ? 0.0 : 1.0);
        for (Check* c : {&ties, &at_most_two, &nonneg, &zero, &f}) push(*c);
    }

    void excess() {
        Check consistent("excess_exact_consistency", 1e-10);
        Check bracket("excess_bracket_ordering", 0.0);
        Check slack("excess_reflection_slack", 2.0);
        Check unbeaten("excess_lower_bound_not_beaten", 1e-9);
        for (int i = 0; i < opt.samples; ++i) {
            const auto p = sampling::random_params(rng, 2.0, 20.0);
            const double ell = rng.uniform(0.05, 0.95) * p.L;
            const double Q = ell - p.neutral_mass();
            const auto r = exact::excess_ground_state(p, Q);
            bracket.add(r.bracket_lo <= r.bracket_hi + 1e-9 * (1.0 + std::abs(r.bracket_hi)) &&
                                r.lower_bound <= r.bracket_lo + 1e-12
                            ? 0.0
                            : 1.0);
            if (r.exact) {
                consistent.add(rel(energy(*r.minimizer, p, BoundaryCondition::neumann).total, r.lower_bound));
                const auto mirrored =
                    exact::excess_ground_state(ModelParams::make(p.gamma, 1.0 - p.rho, p.L), -Q);
                if (mirrored.exact) slack.add(std::abs(r.lower_bound - mirrored.lower_bound));
            }
            for (int k = 0; k < 5; ++k) {
                const auto set = sampling::random_segment_set(rng, p.L, 6, ell);
                const double e = energy(set, p, BoundaryCondition::neumann).total;
                unbeaten.add(std::max(0.0, r.lower_bound - e) / (1.0 + std::abs(e)));
            }
        }
        for (Check* c : {&consistent, &bracket, &slack, &unbeaten}) push(*c);
    }

    void search_oracle() {
        Check agree("oracle_vs_exact", 1.0);
        Check determinism("oracle_determinism", 0.0);
        Check flat("translation_flatness", 1e-10);
        oracle::SearchSpec spec;
        spec.seed = opt.seed;
        spec.restarts = 3;
        const ModelParams instances[] = {ModelParams::make(1.0, 0.5, 12.0), ModelParams::make(1.0, 0.3, 10.0),
                                         ModelParams::make(2.0, 0.6, 6.0), ModelParams::make(0.5, 0.4, 9.0)};
        for (const auto& p : instances) {
            for (auto bc : kAllBoundaryConditions) {
                auto rec = oracle::verify_instance(p, bc, spec);
                rec.exact_energy = perturbed(rec.exact_energy);
                rec.gap = rec.oracle_energy - rec.exact_energy;
                rec.passed = rec.passed && rec.gap >= -1e-9 && rec.gap <= 1e-5 * (1.0 + rec.exact_energy);
                agree.add(rec.passed ? 0.0 : std::numeric_limits<double>::infinity());
                summary.records.push_back(rec);
            }
        }

        oracle::SearchSpec one = spec;
        one.n_intervals = 2;
        one.ell = 6.0;
        const auto p = ModelParams::make(1.0, 0.5, 12.0);
        const auto a = oracle::minimize_fixed_N(p, BoundaryCondition::neumann, one);
        const auto b = oracle::minimize_fixed_N(p, BoundaryCondition::neumann, one);
        determinism.require(a.energy == b.energy && a.set.endpoints() == b.set.endpoints());

        const auto base = exact::canonical_minimizer(p, 2, p.neutral_mass());
        const auto circle = make_interval_set(base.endpoints(), Domain::torus(p.L));
        flat.add(oracle::translation_flatness(circle, p, BoundaryCondition::periodic, 1e-3));
        flat.require(oracle::translation_flatness(base, p, BoundaryCondition::neumann, 1e-3) > 0.0);
        for (Check* c : {&agree, &determinism, &flat}) push(*c);
    }
};

}  // namespace

Summary run(const Options& options) {
    Suite suite(options);
    suite.closed_form_vs_quadrature();
    suite.algebraic_identities();
    suite.reflection();
    suite.periodic_invariance();
    suite.exact_solutions();
    suite.ties_and_limits();
    suite.excess();
    suite.search_oracle();
    for (const auto& c : suite.summary.checks) suite.summary.passed = suite.summary.passed && c.passed;
    return suite.summary;
}

nlohmann::json to_json(const Summary& summary) {
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : summary.checks) {
        checks.push_back({{"name", c.name},
                          {"passed", c.passed},
                          {"samples", c.samples},
                          {"worst_residual", c.worst},
                          {"tolerance", c.tolerance}});
    }
    nlohmann::json records = nlohmann::json::array();
    for (const auto& r : summary.records) records.push_back(io::to_json(r));
    return {{"seed", summary.seed},
            {"passed", summary.passed},
            {"checks", std::move(checks)},
            {"records", std::move(records)}};
}

}  // namespace ldm::verify
