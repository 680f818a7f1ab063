// SPDX-License-Identifier: Apache-2.0
//
// Explicit ground states of the liquid drop model.
//
// For the neutral mass rho*L the minimum over sets with N components is
//   2N + gamma rho^2 (1-rho)^2 L^3 / (12 N^2),
// attained by N equal intervals of length rho*L/N centered at
// (2n-N-1)L/(2N).  Everything in this header is derived from that formula.
#pragma once

#include <optional>
#include <vector>

#include "ldm/model.hpp"

namespace ldm::exact {

/// N intervals of length ell/N centered at (2n-N-1) ell / (2 rho N).
/// Throws FitError unless (N - 1 + rho) ell <= rho N L.
IntervalSet canonical_minimizer(const ModelParams& params, int N, double ell);

/// True when the canonical configuration of mass ell fits in the box.
bool fits(const ModelParams& params, int N, double ell);

/// 2N + gamma rho^2 (1-rho)^2 L^3 / (12 N^2)
double energy_of_N(const ModelParams& params, int N);

/// Real-valued minimizer of energy_of_N over N > 0.
double continuous_optimal_N(const ModelParams& params);

/// Box length at which N and N+1 components have equal energy:
///   L^3 = 24 N^2 (N+1)^2 / ((2N+1) gamma rho^2 (1-rho)^2).
double tie_length(double gamma, double rho, int N);

struct OptimalN {
    std::vector<int> Ns;     // one or two consecutive integers
    bool exact_tie = false;  // L matches tie_length(N) to tie_tol
};

/// Minimizing component counts.  Two are returned when their energies agree to
/// tie_tol * (1 + energy); the tie-length polynomial classifies exact ties.
OptimalN classify_optimal_N(const ModelParams& params, double tie_tol = 1e-9);
std::vector<int> optimal_N(const ModelParams& params, double tie_tol = 1e-9);

struct TranslationRange {
    double lo = 0.0;
    double hi = 0.0;
    bool full_circle = false;  // every a in R (mod L)
};

struct MinimizerFamily {
    int N = 1;
    IntervalSet base;              // E_{rho,N,L}
    TranslationRange range;        // translations with identical energy
    std::optional<TranslationRange> claimed_range;  // Dirichlet only, see dirichlet_extended_report
    double minimal_period = 0.0;   // L / N
};

struct GroundState {
    double energy = 0.0;
    std::vector<int> optimal_Ns;
    std::vector<MinimizerFamily> families;  // aligned with optimal_Ns
    BoundaryCondition bc = BoundaryCondition::neumann;
};

/// Neutral ground state under the given kernel.  The energy does not depend
/// on the kernel; the minimizer families do.
GroundState ground_state(const ModelParams& params, BoundaryCondition bc, double tie_tol = 1e-9);

/// Evaluation of E_{rho,N,L} + a with the Dirichlet kernel on the wider
/// translation range |a| <= (1+rho)L/(2N).  Translations that leave the box are
/// cut at +-L/2 and wrapped; the energy is reported with the full perimeter
/// and with the relative perimeter (box-boundary points not counted).
struct DirichletTranslationSample {
    double a = 0.0;
    bool inside_box = true;
    double energy_wrapped = 0.0;
    double energy_relative_perimeter = 0.0;
    double deviation = 0.0;  // energy_wrapped - ground-state energy
};
std::vector<DirichletTranslationSample> dirichlet_extended_report(const ModelParams& params, int N,
                                                                  int samples = 21);

struct AsymptoticData {
    double e_inf = 0.0;          // lim e(rho L)/L
    double beta = 0.0;           // limiting period
    double c_remainder = 0.0;    // (3/2)^{4/3}
    double remainder_sup = 0.0;  // limsup L^2 (e/L - e_inf)
};

AsymptoticData asymptotics(const ModelParams& params);

/// Generator of a beta-periodic set: the union over n of
/// [offset + n period, offset + n period + length].
struct PeriodicFamily {
    double offset = 0.0;
    double period = 0.0;
    double length = 0.0;

    [[nodiscard]] bool contains(double x) const;
};

/// The two limit sets, the second being the first shifted by beta/2.
std::pair<PeriodicFamily, PeriodicFamily> limit_families(const ModelParams& params);

/// L_N = N beta, where the remainder vanishes.
double zero_remainder_length(const ModelParams& params, int N);

/// Neutral ground-state energy at box length L (other constants from params).
double ground_state_energy(const ModelParams& params, double L);

/// L^2 (e(rho L)/L - e_inf) at box length L.
double remainder(const ModelParams& params, double L);

/// f(x) = x + 1/(3x^2); minimum (3/2)^{2/3} at x = (2/3)^{1/3}.
double f_profile(double x);

struct ExcessResult {
    double Q = 0.0;
    double ell = 0.0;
    double lower_bound = 0.0;  // min_N (2N + ...) - gamma/(12 rho) (3 rho L Q^2 + Q^3)
    int N = 1;                 // component count minimizing the lower bound
    bool fit_condition_holds = false;
    bool exact = false;
    std::optional<IntervalSet> minimizer;
    // Two-sided bracket on e(rho L + Q).  Equal to lower_bound when exact.
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
};

/// Ground state with mass rho L + Q.  Throws MassError unless 0 < rho L + Q < L.
ExcessResult excess_ground_state(const ModelParams& params, double Q);

/// Upper limit on Q below which the excess problem is solved exactly for large L.
double excess_threshold(const ModelParams& params);

/// Search bound ceil(3 N*) + 2 used for discrete minimizations over N.
int search_limit(double continuous_N);

}  // namespace ldm::exact
