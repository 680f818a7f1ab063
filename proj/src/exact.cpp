// SPDX-License-Identifier: Apache-2.0
#include "ldm/exact.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ldm/errors.hpp"

namespace ldm::exact {

namespace {

// gamma^{1/3} rho^{2/3} (1-rho)^{2/3}
double scale(const ModelParams& p) {
    return std::cbrt(p.gamma) * std::pow(p.rho * (1.0 - p.rho), 2.0 / 3.0);
}

void require_N(int N) {
    if (N < 1) throw ParameterError("N must be a positive integer, got " + std::to_string(N));
}

ExcessResult solve_excess(const ModelParams& p, double Q, bool allow_reflection) {
    const double ell = p.rho * p.L + Q;
    if (!(ell > 0.0 && ell < p.L)) {
        throw MassError("mass rho*L + Q = " + std::to_string(ell) + " is outside (0, L)");
    }
    const double coeff = p.gamma * ell * ell * ell * (1.0 - p.rho) * (1.0 - p.rho) / (12.0 * p.rho);
    const double shift = p.gamma / (12.0 * p.rho) * (3.0 * p.rho * p.L * Q * Q + Q * Q * Q);
    const int n_max = search_limit(std::cbrt(coeff));

    ExcessResult out;
    out.Q = Q;
    out.ell = ell;
    double best = std::numeric_limits<double>::infinity();
    double best_fitting = std::numeric_limits<double>::infinity();
    for (int N = 1; N <= n_max; ++N) {
        const double value = 2.0 * N + coeff / (static_cast<double>(N) * N);
        const bool fit = fits(p, N, ell);
        // Among equal values prefer a configuration that fits.
        if (value < best || (value == best && fit && !out.fit_condition_holds)) {
            best = value;
            out.N = N;
            out.fit_condition_holds = fit;
        }
        if (fit) best_fitting = std::min(best_fitting, value);
    }
    out.lower_bound = best - shift;
    out.exact = out.fit_condition_holds;
    if (out.exact) {
        out.minimizer = canonical_minimizer(p, out.N, ell);
        out.bracket_lo = out.bracket_hi = out.lower_bound;
        return out;
    }

    out.bracket_lo = out.lower_bound;
    out.bracket_hi = best_fitting - shift;
    if (allow_reflection) {
        // I_rho[E] and I_{1-rho}[complement] differ only by perimeters, by at most 2.
        const auto mirrored = solve_excess(ModelParams::make(p.gamma, 1.0 - p.rho, p.L), -Q, false);
        out.bracket_lo = std::max(out.bracket_lo, mirrored.bracket_lo - 2.0);
        out.bracket_hi = std::min(out.bracket_hi, mirrored.bracket_hi + 2.0);
    }
    return out;
}

}  // namespace

bool fits(const ModelParams& p, int N, double ell) {
    return (N - 1.0 + p.rho) * ell <= p.rho * N * p.L * (1.0 + 1e-12);
}

IntervalSet canonical_minimizer(const ModelParams& p, int N, double ell) {
    require_N(N);
    if (!(ell > 0.0 && ell <= p.L)) throw MassError("mass must lie in (0, L]");
    if (!fits(p, N, ell)) {
        throw FitError("canonical configuration with N = " + std::to_string(N) +
                       " does not fit: (N - 1 + rho) ell > rho N L");
    }
    const double half = 0.5 * p.L;
    const double length = ell / N;
    std::vector<Endpoints> ends;
    ends.reserve(static_cast<std::size_t>(N));
    for (int n = 1; n <= N; ++n) {
        const double center = (2.0 * n - N - 1.0) * ell / (2.0 * p.rho * N);
        ends.emplace_back(std::max(center - 0.5 * length, -half),
                          std::min(center + 0.5 * length, half));
    }
    return make_interval_set(ends, Domain::segment(p.L));
}

double energy_of_N(const ModelParams& p, int N) {
    require_N(N);
    const double r = p.rho * (1.0 - p.rho);
    return 2.0 * N + p.gamma * r * r * p.L * p.L * p.L / (12.0 * N * N);
}

double continuous_optimal_N(const ModelParams& p) {
    // 2N / (L scale) = (2/3)^{1/3}
    return std::cbrt(2.0 / 3.0) * p.L * scale(p) / 2.0;
}

double tie_length(double gamma, double rho, int N) {
    require_N(N);
    const double r = rho * (1.0 - rho);
    const double n = N;
    return std::cbrt(24.0 * n * n * (n + 1.0) * (n + 1.0) / ((2.0 * n + 1.0) * gamma * r * r));
}

OptimalN classify_optimal_N(const ModelParams& p, double tie_tol) {
    const double n_star = continuous_optimal_N(p);
    const int lo = std::max(1, static_cast<int>(std::floor(n_star)));
    const int hi = std::max(lo, static_cast<int>(std::ceil(n_star)));
    OptimalN out;
    if (lo == hi) {
        out.Ns = {lo};
        return out;
    }
    const double e_lo = energy_of_N(p, lo);
    const double e_hi = energy_of_N(p, hi);
    const double e_min = std::min(e_lo, e_hi);
    if (std::abs(e_lo - e_hi) <= tie_tol * (1.0 + e_min)) {
        out.Ns = {lo, hi};
        out.exact_tie = std::abs(p.L - tie_length(p.gamma, p.rho, lo)) <= tie_tol * p.L;
    } else {
        out.Ns = {e_lo < e_hi ? lo : hi};
    }
    return out;
}

std::vector<int> optimal_N(const ModelParams& p, double tie_tol) {
    return classify_optimal_N(p, tie_tol).Ns;
}

GroundState ground_state(const ModelParams& p, BoundaryCondition bc, double tie_tol) {
    GroundState gs;
    gs.bc = bc;
    gs.optimal_Ns = optimal_N(p, tie_tol);
    gs.energy = std::numeric_limits<double>::infinity();
    for (int N : gs.optimal_Ns) {
        gs.energy = std::min(gs.energy, energy_of_N(p, N));
        MinimizerFamily family;
        family.N = N;
        family.base = canonical_minimizer(p, N, p.neutral_mass());
        family.minimal_period = p.L / N;
        switch (bc) {
            case BoundaryCondition::neumann:
                break;
            case BoundaryCondition::dirichlet: {
                const double in_box = (1.0 - p.rho) * p.L / (2.0 * N);
                const double claimed = (1.0 + p.rho) * p.L / (2.0 * N);
                family.range = {-in_box, in_box, false};
                family.claimed_range = TranslationRange{-claimed, claimed, false};
                break;
            }
            case BoundaryCondition::periodic:
                family.range = {0.0, p.L, true};
                break;
        }
        gs.families.push_back(std::move(family));
    }
    return gs;
}

std::vector<DirichletTranslationSample> dirichlet_extended_report(const ModelParams& p, int N,
                                                                  int samples) {
    require_N(N);
    if (samples < 2) throw ParameterError("need at least two samples");
    const double reference = energy_of_N(p, N);
    const double claimed = (1.0 + p.rho) * p.L / (2.0 * N);
    const double in_box = (1.0 - p.rho) * p.L / (2.0 * N);
    const double half = 0.5 * p.L;
    const double tol = default_merge_tol(p.L);
    const auto base = canonical_minimizer(p, N, p.neutral_mass());
    const auto on_circle = make_interval_set(base.endpoints(), Domain::torus(p.L));

    std::vector<DirichletTranslationSample> report;
    report.reserve(static_cast<std::size_t>(samples));
    for (int i = 0; i < samples; ++i) {
        DirichletTranslationSample s;
        s.a = -claimed + 2.0 * claimed * i / (samples - 1);
        s.inside_box = std::abs(s.a) <= in_box * (1.0 + 1e-12);
        // Cut the translated set at +-L/2 and read it back as a segment set.
        const auto moved = on_circle.translated(s.a);
        const auto cut = IntervalSet::from_canonical(moved.pieces(), Domain::segment(p.L));
        const auto e = energy(cut, p, BoundaryCondition::dirichlet);
        int boundary_points = 0;
        for (const auto& piece : cut.pieces()) {
            if (piece.left() <= -half + tol) ++boundary_points;
            if (piece.right() >= half - tol) ++boundary_points;
        }
        s.energy_wrapped = e.total;
        s.energy_relative_perimeter = e.total - boundary_points;
        s.deviation = e.total - reference;
        report.push_back(s);
    }
    return report;
}

AsymptoticData asymptotics(const ModelParams& p) {
    const double k = scale(p);
    AsymptoticData out;
    out.e_inf = std::pow(1.5, 2.0 / 3.0) * k;
    out.beta = std::pow(2.0, 2.0 / 3.0) * std::cbrt(3.0) / k;
    out.c_remainder = std::pow(1.5, 4.0 / 3.0);
    out.remainder_sup = out.c_remainder / k;
    return out;
}

bool PeriodicFamily::contains(double x) const {
    const double t = x - offset;
    const double r = t - period * std::floor(t / period);
    return r <= length;
}

std::pair<PeriodicFamily, PeriodicFamily> limit_families(const ModelParams& p) {
    const double beta = asymptotics(p).beta;
    return {PeriodicFamily{-0.5 * beta * p.rho, beta, beta * p.rho},
            PeriodicFamily{0.5 * beta * (1.0 - p.rho), beta, beta * p.rho}};
}

double zero_remainder_length(const ModelParams& p, int N) {
    require_N(N);
    return N * asymptotics(p).beta;
}

double ground_state_energy(const ModelParams& p, double L) {
    const auto q = p.with_length(L);
    double e = std::numeric_limits<double>::infinity();
    for (int N : optimal_N(q)) e = std::min(e, energy_of_N(q, N));
    return e;
}

double remainder(const ModelParams& p, double L) {
    const double e = ground_state_energy(p, L);
    return L * L * (e / L - asymptotics(p).e_inf);
}

double f_profile(double x) {
    if (!(x > 0.0)) throw ParameterError("f_profile needs x > 0");
    return x + 1.0 / (3.0 * x * x);
}

ExcessResult excess_ground_state(const ModelParams& p, double Q) {
    return solve_excess(p, Q, true);
}

double excess_threshold(const ModelParams& p) {
    return std::pow(2.0, 2.0 / 3.0) * std::cbrt(3.0) / std::cbrt(p.gamma) *
           std::cbrt(p.rho * (1.0 - p.rho));
}

int search_limit(double continuous_N) {
    return static_cast<int>(std::ceil(3.0 * continuous_N)) + 2;
}

}  // namespace ldm::exact
