// SPDX-License-Identifier: Apache-2.0
//
// Acceptance suite.  Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "ldm/exact.hpp"
#include "ldm/model.hpp"
#include "ldm/oracle.hpp"
#include "ldm/sampling.hpp"

namespace {

using namespace ldm;

struct Outcome {
    bool passed = true;
    std::string detail;
};

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

// Triples with a unique, small optimal N and a clear margin to the runner-up.
std::vector<ModelParams> search_grid() {
    std::vector<ModelParams> out;
    sampling::Rng rng(2024);
    while (out.size() < 50) {
        const double gamma = rng.uniform(0.5, 4.0);
        const double rho = rng.uniform(0.2, 0.8);
        const double L = rng.uniform(2.0, 25.0);
        const auto p = ModelParams::make(gamma, rho, L);
        const auto ns = exact::optimal_N(p);
        if (ns.size() != 1 || ns.front() > 4) continue;
        const int N = ns.front();
        const double best = exact::energy_of_N(p, N);
        double runner_up = exact::energy_of_N(p, N + 1);
        if (N > 1) runner_up = std::min(runner_up, exact::energy_of_N(p, N - 1));
        if (runner_up - best < 1e-3 * best) continue;
        out.push_back(p);
    }
    return out;
}

Outcome closed_form_vs_quadrature() {
    sampling::Rng rng(11);
    double worst = 0.0;
    for (auto bc : kAllBoundaryConditions) {
        for (int i = 0; i < 100; ++i) {
            const auto p = sampling::random_params(rng, 1.0, 15.0);
            const double mass = rng.uniform(0.05, 0.95) * p.L;
            const auto set = bc == BoundaryCondition::periodic && i % 2
                                 ? sampling::random_torus_set(rng, p.L, 6, mass)
                                 : sampling::random_segment_set(rng, p.L, 6, mass);
            const double e = energy(set, p, bc).total;
            worst = std::max(worst, std::abs(e - oracle::quad_energy(set, p, bc)) / (1.0 + std::abs(e)));
        }
    }
    return {worst <= 1e-8, fmt::format("300 sets, worst normalized gap {:.3g}", worst)};
}

Outcome oracle_ground_states() {
    double worst_e = 0.0, worst_x = 0.0;
    oracle::SearchSpec spec;
    spec.seed = 5;
    for (const auto& p : search_grid()) {
        const int N = exact::optimal_N(p).front();
        const double target = exact::energy_of_N(p, N);
        const auto r = oracle::minimize_global(p, BoundaryCondition::neumann, p.neutral_mass(), N + 2, spec);
        worst_e = std::max(worst_e, rel(r.energy, target));
        const auto want = exact::canonical_minimizer(p, N, p.neutral_mass()).endpoints();
        const auto got = r.set.endpoints();
        if (got.size() != want.size()) {
            worst_x = std::numeric_limits<double>::infinity();
            continue;
        }
        for (std::size_t k = 0; k < got.size(); ++k) {
            worst_x = std::max({worst_x, std::abs(got[k].first - want[k].first) / p.L,
                                std::abs(got[k].second - want[k].second) / p.L});
        }
    }
    return {worst_e <= 1e-5 && worst_x <= 1e-3,
            fmt::format("50 triples, energy rel {:.3g}, endpoints/L {:.3g}", worst_e, worst_x)};
}

Outcome tie_structure() {
    const auto p = ModelParams::make(1.0, 0.5, 8.0);
    const auto ns = exact::optimal_N(p);
    bool ok = ns == std::vector<int>{1, 2};
    double worst = 0.0;
    for (int N : ns) worst = std::max(worst, rel(exact::energy_of_N(p, N), 14.0 / 3.0));
    ok = ok && worst <= 1e-12;
    std::size_t most = 0;
    int ties = 0;
    for (int i = 0; i < 10000; ++i) {
        const double L = 0.5 + 199.5 * i / 9999.0;
        const auto s = exact::optimal_N(p.with_length(L));
        most = std::max(most, s.size());
        ties += s.size() == 2;
    }
    for (int N = 1; N <= 30; ++N) {
        const auto s = exact::optimal_N(p.with_length(exact::tie_length(1.0, 0.5, N)));
        most = std::max(most, s.size());
        ties += s.size() == 2;
    }
    ok = ok && most <= 2;
    return {ok, fmt::format("L=8 -> {{{}}}, energy rel {:.3g}; sweep max |Ns| = {}, {} ties", fmt::join(ns, ","),
                            worst, most, ties)};
}

const std::vector<std::pair<double, double>> kPairs{{1.0, 0.5}, {0.3, 0.2}, {5.0, 0.75}};

Outcome thermodynamic_limit() {
    double worst = 0.0;
    for (auto [gamma, rho] : kPairs) {
        const auto p = ModelParams::make(gamma, rho, 1.0);
        const auto a = exact::asymptotics(p);
        const double closed = std::pow(1.5, 2.0 / 3.0) * std::cbrt(gamma) * std::pow(rho * (1 - rho), 2.0 / 3.0);
        for (int N = 1; N <= 10; ++N) {
            const double L = N * a.beta;
            worst = std::max(worst, rel(exact::ground_state_energy(p, L) / L, closed));
        }
    }
    return {worst <= 1e-12, fmt::format("30 lengths, worst rel {:.3g}", worst)};
}

Outcome uniform_bound() {
    double worst = std::numeric_limits<double>::infinity();
    const auto p = ModelParams::make(1.0, 0.5, 1.0);
    const auto a = exact::asymptotics(p);
    sampling::Rng rng(3);
    for (int i = 0; i < 10000; ++i) {
        const double L = i % 2 ? rng.uniform(0.5 * a.beta, 100 * a.beta) : a.beta * (0.5 + 99.5 * i / 9999.0);
        worst = std::min(worst, exact::ground_state_energy(p, L) / L - a.e_inf);
    }
    return {worst >= -1e-12, fmt::format("10000 lengths, min e/L - e_inf = {:.3g}", worst)};
}

Outcome remainder_optimality() {
    const auto p = ModelParams::make(1.0, 0.5, 1.0);
    const auto a = exact::asymptotics(p);
    double best = 0.0, arg = 0.0;
    auto consider = [&](double L) {
        const double r = exact::remainder(p, L);
        if (r > best) best = r, arg = L;
    };
    const int n = 100000;
    for (int i = 0; i <= n; ++i) consider(a.beta * (50.0 + static_cast<double>(i) / n));
    for (int N = 45; N <= 55; ++N) {
        const double t = exact::tie_length(1.0, 0.5, N);
        if (t >= 50 * a.beta && t <= 51 * a.beta) consider(t);
    }
    const double zero = exact::remainder(p, 50 * a.beta);
    const double dev = std::abs(best - a.remainder_sup) / a.remainder_sup;
    return {dev <= 0.02 && std::abs(zero) <= 1e-9,
            fmt::format("max {:.9g} at L = {:.6g} beta (c/kappa = {:.9g}, off {:.3g}); at 50 beta {:.3g}", best,
                        arg / a.beta, a.remainder_sup, dev, zero)};
}

Outcome boundary_conditions() {
    double agree = 0.0;
    for (const auto& p : search_grid()) {
        std::vector<double> values;
        for (auto bc : kAllBoundaryConditions) {
            const auto gs = exact::ground_state(p, bc);
            values.push_back(gs.energy);
            for (const auto& f : gs.families) values.push_back(energy(f.base, p, bc).total);
        }
        for (double v : values) agree = std::max(agree, rel(v, values.front()));
    }

    const auto p = ModelParams::make(1.0, 0.5, 12.0);
    const auto base = exact::canonical_minimizer(p, 2, p.neutral_mass());
    const auto ring = make_interval_set(base.endpoints(), Domain::torus(p.L));
    const double e0 = energy(ring, p, BoundaryCondition::periodic).total;
    double periodic = 0.0;
    for (int k = 0; k < 20; ++k) {
        const auto moved = ring.translated(p.L * k / 20.0 + 0.0137);
        periodic = std::max(periodic, rel(energy(moved, p, BoundaryCondition::periodic).total, e0));
    }

    const auto gs = exact::ground_state(p, BoundaryCondition::dirichlet);
    const auto& range = gs.families.front().range;
    double dirichlet = 0.0;
    for (int k = 0; k < 20; ++k) {
        const double shift = range.lo + (range.hi - range.lo) * k / 19.0;
        const double e = energy(base.translated(shift), p, BoundaryCondition::dirichlet).total;
        dirichlet = std::max(dirichlet, rel(e, gs.energy));
    }

    // Shifts past the in-box range: reported, not asserted.
    double outside = 0.0;
    for (const auto& s : exact::dirichlet_extended_report(p, 2)) {
        if (!s.inside_box) outside = std::max(outside, std::abs(s.deviation));
    }
    std::printf("      extended-range report (not asserted): largest deviation outside the box %.6g\n", outside);

    const bool ok = agree <= 1e-12 && periodic <= 1e-12 && dirichlet <= 1e-12;
    return {ok, fmt::format("bc agreement {:.3g}, periodic shift {:.3g}, dirichlet in-box shift {:.3g}", agree,
                            periodic, dirichlet)};
}

Outcome excess_charge() {
    const auto big = ModelParams::make(1.0, 0.5, 1000.0);
    const double e_inf = exact::asymptotics(big).e_inf;
    double worst = 0.0;
    bool all_exact = true;
    for (double Q : {0.2, 0.5, 1.0}) {
        const auto r = exact::excess_ground_state(big, Q);
        all_exact = all_exact && r.exact;
        worst = std::max(worst, std::abs(r.lower_bound / big.L - (e_inf - Q * Q / 4.0)));
    }
    const auto small = ModelParams::make(1.0, 0.5, 12.0);
    const double exact_small = exact::excess_ground_state(small, 0.5).lower_bound;
    oracle::SearchSpec spec;
    const auto r = oracle::minimize_global(small, BoundaryCondition::neumann, 6.5, 6, spec);
    const double oracle_gap = rel(r.energy, exact_small);
    const double reported_gap = std::abs(exact_small - 6.089844);
    const bool ok = all_exact && worst <= 5e-3 && oracle_gap <= 1e-5 && reported_gap <= 1e-5;
    return {ok, fmt::format("L=1000 worst |e/L - limit| {:.3g}; L=12 exact {:.9g}, oracle {:.9g} (rel {:.3g})",
                            worst, exact_small, r.energy, oracle_gap)};
}

Outcome algebraic_identities() {
    sampling::Rng rng(17);
    double square = 0.0, cubic = 0.0, bound1 = 0.0, bound2 = 0.0, shifted = 0.0;
    double eq1 = 0.0, eq2 = 0.0, eq_shifted = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double L = rng.uniform(2.0, 20.0);
        const auto set = sampling::random_segment_set(rng, L, 8);
        const auto m = moments(set);
        const double self = self_interaction(set);
        const double m3 = m.mass * m.mass * m.mass;

        const double rho = rng.uniform(0.01, 1.0);
        const auto terms = completed_square_terms(set, rho);
        const double direct = self + rho * m.second;
        square = std::max(square, std::abs(terms.sum() - direct) /
                                      (std::abs(self) + rho * m.second + std::abs(terms.bulk_term)));
        if (terms.square_term < 0.0) square = std::numeric_limits<double>::infinity();

        std::vector<double> q(static_cast<std::size_t>(rng.integer(1, 50)));
        double total = 0.0;
        for (auto& x : q) total += (x = rng.uniform(0.0, 3.0));
        cubic = std::max(cubic, std::abs(cubic_sum_identity_residual(q)) / (total * total * total));

        const int N = static_cast<int>(set.size()) + rng.integer(0, 3);
        const double r1 = rng.uniform(0.01, 0.999);
        const double lb1 = -m3 / (12.0 * r1) * (1.0 - (1.0 - r1) * (1.0 - r1) / (1.0 * N * N));
        const double v1 = self + r1 * m.second;
        const double s1 = std::abs(self) + r1 * m.second;
        bound1 = std::max(bound1, (lb1 - v1) / s1);
        shifted = std::max(shifted, (lb1 - (v1 - r1 / m.mass * m.first * m.first)) / s1);

        const double r2 = rng.uniform(1.0, 3.0);
        const double lb2 = (r2 - 2.0) / 12.0 * m3;
        bound2 = std::max(bound2, (lb2 - (self + r2 * m.second)) / (std::abs(self) + r2 * m.second));

        // Equality cases: N evenly spaced pieces, and a single piece.
        std::vector<Interval> even;
        for (int k = 1; k <= N; ++k) even.push_back({(2.0 * k - N - 1.0) * m.mass / (2.0 * r1 * N), m.mass / N});
        const double c = rng.uniform(-1.0, 1.0);
        std::vector<Interval> even_shifted = even;
        for (auto& piece : even_shifted) piece.center += c;
        const double wide = 4.0 * m.mass / r1 + 8.0;
        auto eval = [&](const std::vector<Interval>& pieces, double r, bool subtract_first) {
            const auto s = IntervalSet::from_canonical(pieces, Domain::segment(wide));
            const auto sm = moments(s);
            const double si = self_interaction(s);
            double v = si + r * sm.second;
            if (subtract_first) v -= r / sm.mass * sm.first * sm.first;
            return std::pair{v, std::abs(si) + r * sm.second};
        };
        auto [v_eq, s_eq] = eval(even, r1, false);
        eq1 = std::max(eq1, std::abs(v_eq - lb1) / s_eq);
        auto [v_sh, s_sh] = eval(even_shifted, r1, true);
        eq_shifted = std::max(eq_shifted, std::abs(v_sh - lb1) / s_sh);
        auto [v_one, s_one] = eval({{0.0, m.mass}}, r2, false);
        eq2 = std::max(eq2, std::abs(v_one - lb2) / s_one);
    }
    const bool ok = square <= 1e-12 && cubic <= 1e-12 && bound1 <= 1e-12 && bound2 <= 1e-12 &&
                    shifted <= 1e-12 && eq1 <= 1e-10 && eq2 <= 1e-10 && eq_shifted <= 1e-10;
    return {ok, fmt::format("square {:.3g}, cubic {:.3g}, bounds {:.3g}/{:.3g}/{:.3g}, equality {:.3g}/{:.3g}/{:.3g}",
                            square, cubic, bound1, bound2, shifted, eq1, eq2, eq_shifted)};
}

Outcome reflection_identity() {
    sampling::Rng rng(23);
    double worst = 0.0;
    int max_dper = 0;
    for (int i = 0; i < 1000; ++i) {
        const auto p = sampling::random_params(rng, 1.0, 15.0);
        auto set = sampling::random_segment_set(rng, p.L, 6);
        if (i % 3 != 0) {
            auto ends = set.endpoints();
            ends.front().first = -0.5 * p.L;
            if (i % 3 == 2) ends.back().second = 0.5 * p.L;
            set = make_interval_set(ends, Domain::segment(p.L));
        }
        const auto comp = complement(set);
        const auto mirrored = ModelParams::make(p.gamma, 1.0 - p.rho, p.L);
        const double e = energy(set, p, BoundaryCondition::neumann).total;
        const double ec = energy(comp, mirrored, BoundaryCondition::neumann).total;
        const int dper = perimeter(set) - perimeter(comp);
        worst = std::max(worst, std::abs(e - ec - dper) / (1.0 + std::abs(e)));
        max_dper = std::max(max_dper, std::abs(dper));
    }
    return {worst <= 1e-10 && max_dper <= 2,
            fmt::format("1000 sets, worst residual {:.3g}, max |per E - per E^c| = {}", worst, max_dper)};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"closed form vs quadrature", closed_form_vs_quadrature},
        {"oracle ground states", oracle_ground_states},
        {"tie structure", tie_structure},
        {"thermodynamic limit", thermodynamic_limit},
        {"uniform lower bound", uniform_bound},
        {"remainder optimality", remainder_optimality},
        {"boundary conditions", boundary_conditions},
        {"excess charge", excess_charge},
        {"algebraic identities", algebraic_identities},
        {"reflection identity", reflection_identity},
    };
    int failures = 0;
    int index = 0;
    for (const auto& [name, run] : criteria) {
        ++index;
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failures += !o.passed;
        std::printf("%s %2d %-28s %s\n", o.passed ? "PASS" : "FAIL", index, name, o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", index - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
