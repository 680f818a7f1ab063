// SPDX-License-Identifier: Apache-2.0
//
// Independent numerical checks of the closed forms: tensor Gauss quadrature
// of the interaction integral, an exact rectangle-primitive evaluation, and a
// derivative-free search over interval configurations.
#pragma once

#include <cstdint>
#include <vector>

#include "ldm/model.hpp"

namespace ldm::oracle {

struct QuadratureSpec {
    int order = 16;                // Gauss-Legendre points per direction
    double target_abs_tol = 1e-10;
    int max_subdivisions = 6;      // dyadic refinement levels

    void validate() const;
};

/// per E + gamma \iint mu k mu by Gauss quadrature over cells induced by the
/// endpoints of E, with diagonal cells split along x = y.
double quad_energy(const IntervalSet& set, const ModelParams& params, BoundaryCondition bc,
                   const QuadratureSpec& spec = {});

/// Same quantity with each cell pair integrated by the exact primitive of
/// |x - y| and x y.  No quadrature, no center/length algebra.
double semi_analytic_energy(const IntervalSet& set, const ModelParams& params,
                            BoundaryCondition bc);

/// -1/2 \iint_{ExE} |x-y| by the same quadrature.
double quad_self_interaction(const IntervalSet& set, const QuadratureSpec& spec = {});

/// Perimeter counted directly from endpoints.
int count_perimeter(const IntervalSet& set, BoundaryCondition bc);

struct SearchSpec {
    int n_intervals = 1;
    double ell = 1.0;
    int restarts = 4;
    std::uint64_t seed = 0;
    double energy_tol = 1e-12;  // minimal accepted improvement
    int max_iters = 200000;

    void validate() const;
};

struct SearchResult {
    IntervalSet set;
    double energy = 0.0;
    int N = 0;
};

/// Pattern search over (gaps, lengths) with sum(gaps) = L - ell and
/// sum(lengths) = ell, from `restarts` seeded random starts.
SearchResult minimize_fixed_N(const ModelParams& params, BoundaryCondition bc,
                              const SearchSpec& spec);

/// Pattern search started from a given configuration with the same number of
/// pieces (segment sets only).
SearchResult minimize_from(const IntervalSet& start, const ModelParams& params,
                           BoundaryCondition bc, const SearchSpec& spec);

/// Best of minimize_fixed_N over N = 1..N_max.
SearchResult minimize_global(const ModelParams& params, BoundaryCondition bc, double ell,
                             int N_max, const SearchSpec& spec);

/// |energy(E + delta) - energy(E)|.
double translation_flatness(const IntervalSet& set, const ModelParams& params,
                            BoundaryCondition bc, double delta);

struct VerificationRecord {
    ModelParams params;
    BoundaryCondition bc = BoundaryCondition::neumann;
    double exact_energy = 0.0;
    double oracle_energy = 0.0;
    double gap = 0.0;             // oracle - exact
    double endpoint_error = 0.0;  // max endpoint distance to the nearest exact family member
    int oracle_N = 0;
    bool passed = false;
};

/// Runs minimize_global at the neutral mass and compares with the exact
/// ground state.  Passes when -1e-9 <= gap <= energy_tol_rel * (1 + exact)
/// and the endpoints match within endpoint_tol_rel * L (Neumann only).
VerificationRecord verify_instance(const ModelParams& params, BoundaryCondition bc,
                                   const SearchSpec& spec, double energy_tol_rel = 1e-5,
                                   double endpoint_tol_rel = 1e-3);

}  // namespace ldm::oracle
