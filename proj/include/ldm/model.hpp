// SPDX-License-Identifier: Apache-2.0
//
// One-dimensional liquid drop model: domain types and closed-form energies.
//
// A configuration is a finite union of disjoint intervals E inside the box
// [-L/2, L/2] (or on the circle R/LZ).  The signed charge density is
// 1_E - rho and the energy is
//
//   I[E] = per E + gamma * \iint (1_E(x) - rho) G(x,y) (1_E(y) - rho) dx dy
//
// with G(x,y) = -|x-y|/2 for Neumann and G(x,y) = -|x-y|/2 - xy/L for the
// Dirichlet and periodic kernels (additive constants dropped; they vanish for
// neutral sets with |E| = rho L).
#pragma once

#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace ldm {

/// Model constants.  Construct through ModelParams::make to validate.
struct ModelParams {
    double gamma = 1.0;
    double rho = 0.5;
    double L = 1.0;

    /// Throws ParameterError unless gamma > 0, 0 < rho < 1 and L > 0.
    static ModelParams make(double gamma, double rho, double L);

    /// Same constants with a different box length.
    [[nodiscard]] ModelParams with_length(double new_L) const;

    /// Mass of a neutral configuration, rho * L.
    [[nodiscard]] double neutral_mass() const { return rho * L; }
};

enum class BoundaryCondition { neumann, dirichlet, periodic };

inline constexpr BoundaryCondition kAllBoundaryConditions[] = {
    BoundaryCondition::neumann, BoundaryCondition::dirichlet, BoundaryCondition::periodic};

std::string_view to_string(BoundaryCondition bc);
/// Accepts "neumann", "dirichlet" or "periodic"; throws ParameterError otherwise.
BoundaryCondition parse_boundary_condition(std::string_view name);

enum class DomainKind { segment, torus };

struct Domain {
    DomainKind kind = DomainKind::segment;
    double L = 1.0;

    static Domain segment(double L) { return {DomainKind::segment, L}; }
    static Domain torus(double L) { return {DomainKind::torus, L}; }
};

std::string_view to_string(DomainKind kind);

/// One interval, stored by center and length.
struct Interval {
    double center = 0.0;
    double length = 0.0;

    [[nodiscard]] double left() const { return center - 0.5 * length; }
    [[nodiscard]] double right() const { return center + 0.5 * length; }
    static Interval from_endpoints(double left, double right) {
        return {0.5 * (left + right), right - left};
    }
};

using Endpoints = std::pair<double, double>;

/// Canonical finite union of intervals with pairwise disjoint closures.
///
/// Pieces are sorted by center and lie in [-L/2, L/2].  On the torus the cut
/// sits at -L/2; a component crossing the cut is stored as two pieces (the
/// first and the last) and wraps() is true.
class IntervalSet {
  public:
    IntervalSet() = default;

    /// Trusts the caller: pieces must already satisfy the canonical invariants.
    static IntervalSet from_canonical(std::vector<Interval> pieces, Domain domain,
                                      bool wraps = false);

    [[nodiscard]] const std::vector<Interval>& pieces() const { return pieces_; }
    [[nodiscard]] const Domain& domain() const { return domain_; }
    [[nodiscard]] double box_length() const { return domain_.L; }
    [[nodiscard]] bool on_torus() const { return domain_.kind == DomainKind::torus; }
    [[nodiscard]] bool wraps() const { return wraps_; }
    [[nodiscard]] bool empty() const { return pieces_.empty(); }
    [[nodiscard]] std::size_t size() const { return pieces_.size(); }

    /// Number of connected components in the domain (wrap-aware on the torus).
    [[nodiscard]] std::size_t components() const;
    /// |E|
    [[nodiscard]] double measure() const;
    /// Raw piece endpoints in storage order.
    [[nodiscard]] std::vector<Endpoints> endpoints() const;
    /// One (left, right) per component; a wrapping component has right > L/2.
    [[nodiscard]] std::vector<Endpoints> component_endpoints() const;

    /// E + a.  On a segment throws DomainError if the result leaves the box;
    /// on the torus the result is re-cut at -L/2.
    [[nodiscard]] IntervalSet translated(double a, double merge_tol = -1.0) const;

  private:
    std::vector<Interval> pieces_;
    Domain domain_{};
    bool wraps_ = false;
};

/// Default merge tolerance, 1e-12 * L.
double default_merge_tol(double L);

/// Builds a canonical IntervalSet from endpoint pairs.
///
/// Touching closures (within merge_tol) merge, pieces no longer than merge_tol
/// are dropped.  Overlapping interiors raise OverlapError; on a segment,
/// endpoints outside [-L/2, L/2] raise DomainError.  A negative merge_tol
/// selects default_merge_tol(L).
IntervalSet make_interval_set(std::span<const Endpoints> endpoints, Domain domain,
                              double merge_tol = -1.0);

struct EnergyBreakdown {
    int perimeter = 0;
    double self_term = 0.0;          // -1/2 \iint_{ExE} |x-y|
    double background_term = 0.0;    // rho \int_E x^2 + rho|E|L^2/4 - rho^2 L^3/6
    double moment_correction = 0.0;  // -(gamma/L) (\int_E x)^2, zero for Neumann
    double total = 0.0;
};

struct Moments {
    double mass = 0.0;
    double first = 0.0;
    double second = 0.0;
};

struct CompletedSquare {
    double square_term = 0.0;
    double cubic_term = 0.0;
    double bulk_term = 0.0;

    [[nodiscard]] double sum() const { return square_term + cubic_term + bulk_term; }
};

/// 2 x (number of components); the torus counts a wrapping component once.
int perimeter(const IntervalSet& set);

/// -1/2 \iint_{ExE} |x-y| dx dy.  Segment sets only.
double self_interaction(const IntervalSet& set);

/// Mass, first and second moment.  Segment sets only.
Moments moments(const IntervalSet& set);

/// Closed-form energy.  Neumann and Dirichlet need a segment set; periodic
/// accepts either and uses the torus perimeter.
EnergyBreakdown energy(const IntervalSet& set, const ModelParams& params, BoundaryCondition bc);

/// Everything in energy() except the perimeter, evaluated on raw pieces that
/// are sorted, disjoint and inside the box.  Used by the search oracle.
double field_energy(std::span<const Interval> pieces, const ModelParams& params,
                    BoundaryCondition bc);

/// The three terms of the completed-square decomposition of
/// self_interaction + rho * second moment.  Requires 0 < rho <= 1.
CompletedSquare completed_square_terms(const IntervalSet& set, double rho);

/// sum_n q_n (sum_{m<n} q_m - sum_{m>n} q_m)^2 + (1/3) sum q^3 - (1/3)(sum q)^3
double cubic_sum_identity_residual(std::span<const double> lengths);

/// (-L/2, L/2) \ E on the same segment.
IntervalSet complement(const IntervalSet& set, double merge_tol = -1.0);

}  // namespace ldm
