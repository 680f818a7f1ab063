// SPDX-License-Identifier: Apache-2.0
#include "ldm/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ldm/errors.hpp"

namespace ldm {

namespace {

std::string describe(double left, double right) {
    std::ostringstream os;
    os.precision(17);
    os << "[" << left << ", " << right << "]";
    return os.str();
}

void require_segment(const IntervalSet& set, std::string_view what) {
    if (set.on_torus()) {
        throw DomainError(std::string(what) + " is defined for segment sets only");
    }
}

/// Sorts, drops short pieces, checks overlaps and merges touching closures.
std::vector<Endpoints> merge_sorted(std::vector<Endpoints> raw, double tol) {
    std::erase_if(raw, [tol](const Endpoints& e) { return e.second - e.first <= tol; });
    std::sort(raw.begin(), raw.end());
    std::vector<Endpoints> out;
    for (const auto& e : raw) {
        if (!out.empty()) {
            auto& last = out.back();
            if (e.first < last.second - tol) {
                throw OverlapError("intervals " + describe(last.first, last.second) + " and " +
                                   describe(e.first, e.second) + " overlap");
            }
            if (e.first <= last.second + tol) {
                last.second = std::max(last.second, e.second);
                continue;
            }
        }
        out.push_back(e);
    }
    return out;
}

std::vector<Interval> to_pieces(const std::vector<Endpoints>& ends) {
    std::vector<Interval> pieces;
    pieces.reserve(ends.size());
    for (const auto& [l, r] : ends) pieces.push_back(Interval::from_endpoints(l, r));
    return pieces;
}

/// Perimeter of a segment set read as a subset of the circle.
int torus_perimeter_of_segment(const IntervalSet& set) {
    const auto n = static_cast<int>(set.size());
    if (n == 0) return 0;
    const double half = 0.5 * set.box_length();
    const double tol = default_merge_tol(set.box_length());
    const bool at_left = set.pieces().front().left() <= -half + tol;
    const bool at_right = set.pieces().back().right() >= half - tol;
    if (n == 1 && at_left && at_right) return 0;
    return 2 * (n - ((n > 1 && at_left && at_right) ? 1 : 0));
}

}  // namespace

ModelParams ModelParams::make(double gamma, double rho, double L) {
    if (!(gamma > 0.0) || !std::isfinite(gamma)) throw ParameterError("gamma must be positive");
    if (!(rho > 0.0 && rho < 1.0)) throw ParameterError("rho must lie in (0, 1)");
    if (!(L > 0.0) || !std::isfinite(L)) throw ParameterError("L must be positive");
    return {gamma, rho, L};
}

ModelParams ModelParams::with_length(double new_L) const { return make(gamma, rho, new_L); }

std::string_view to_string(BoundaryCondition bc) {
    switch (bc) {
        case BoundaryCondition::neumann: return "neumann";
        case BoundaryCondition::dirichlet: return "dirichlet";
        case BoundaryCondition::periodic: return "periodic";
    }
    return "unknown";
}

BoundaryCondition parse_boundary_condition(std::string_view name) {
    for (auto bc : kAllBoundaryConditions) {
        if (to_string(bc) == name) return bc;
    }
    throw ParameterError("unknown boundary condition '" + std::string(name) + "'");
}

std::string_view to_string(DomainKind kind) {
    return kind == DomainKind::segment ? "segment" : "torus";
}

double default_merge_tol(double L) { return 1e-12 * L; }

IntervalSet IntervalSet::from_canonical(std::vector<Interval> pieces, Domain domain, bool wraps) {
    IntervalSet set;
    set.pieces_ = std::move(pieces);
    set.domain_ = domain;
    set.wraps_ = wraps;
    return set;
}

std::size_t IntervalSet::components() const {
    if (pieces_.empty()) return 0;
    if (on_torus() && pieces_.size() == 1 &&
        pieces_.front().length >= domain_.L - default_merge_tol(domain_.L)) {
        return 0;  // the whole circle has no boundary
    }
    return pieces_.size() - (wraps_ ? 1 : 0);
}

double IntervalSet::measure() const {
    double m = 0.0;
    for (const auto& p : pieces_) m += p.length;
    return m;
}

std::vector<Endpoints> IntervalSet::endpoints() const {
    std::vector<Endpoints> out;
    out.reserve(pieces_.size());
    for (const auto& p : pieces_) out.emplace_back(p.left(), p.right());
    return out;
}

std::vector<Endpoints> IntervalSet::component_endpoints() const {
    auto ends = endpoints();
    if (wraps_ && ends.size() >= 2) {
        const Endpoints first = ends.front();
        ends.erase(ends.begin());
        ends.back().second = first.second + domain_.L;
    }
    return ends;
}

IntervalSet IntervalSet::translated(double a, double merge_tol) const {
    auto ends = component_endpoints();
    for (auto& [l, r] : ends) {
        l += a;
        r += a;
    }
    return make_interval_set(ends, domain_, merge_tol);
}

IntervalSet make_interval_set(std::span<const Endpoints> endpoints, Domain domain,
                              double merge_tol) {
    const double L = domain.L;
    if (!(L > 0.0)) throw DomainError("domain length must be positive");
    const double tol = merge_tol < 0.0 ? default_merge_tol(L) : merge_tol;
    const double half = 0.5 * L;

    std::vector<Endpoints> raw;
    raw.reserve(endpoints.size() + 1);
    for (const auto& [l, r] : endpoints) {
        if (!std::isfinite(l) || !std::isfinite(r)) throw DomainError("non-finite endpoint");
        if (l > r + tol) throw DomainError("interval " + describe(l, r) + " has left > right");
        if (domain.kind == DomainKind::segment) {
            if (l < -half - tol || r > half + tol) {
                throw DomainError("interval " + describe(l, r) + " leaves the segment");
            }
            raw.emplace_back(std::max(l, -half), std::min(r, half));
            continue;
        }
        const double len = r - l;
        if (len > L + tol) throw OverlapError("interval " + describe(l, r) + " wraps onto itself");
        if (len >= L - tol) {
            raw.emplace_back(-half, half);
            continue;
        }
        const double lo = l - L * std::floor((l + half) / L);
        const double hi = lo + len;
        if (hi > half) {
            raw.emplace_back(lo, half);
            raw.emplace_back(-half, hi - L);
        } else {
            raw.emplace_back(lo, hi);
        }
    }

    auto merged = merge_sorted(std::move(raw), tol);
    bool wraps = false;
    if (domain.kind == DomainKind::torus && merged.size() >= 2 &&
        merged.front().first <= -half + tol && merged.back().second >= half - tol) {
        merged.front().first = -half;
        merged.back().second = half;
        wraps = true;
    }
    return IntervalSet::from_canonical(to_pieces(merged), domain, wraps);
}

int perimeter(const IntervalSet& set) { return 2 * static_cast<int>(set.components()); }

namespace {

double self_interaction_raw(std::span<const Interval> pieces) {
    // Pieces are sorted by center, so |x_m - x_n| = x_m - x_n for n < m.
    double cross = 0.0, cubes = 0.0, mass_before = 0.0, moment_before = 0.0;
    for (const auto& p : pieces) {
        cross += p.length * (p.center * mass_before - moment_before);
        mass_before += p.length;
        moment_before += p.length * p.center;
        cubes += p.length * p.length * p.length;
    }
    return -cross - cubes / 6.0;
}

Moments moments_raw(std::span<const Interval> pieces) {
    Moments m;
    for (const auto& p : pieces) {
        m.mass += p.length;
        m.first += p.length * p.center;
        m.second += p.length * p.center * p.center + p.length * p.length * p.length / 12.0;
    }
    return m;
}

double background_raw(const Moments& m, const ModelParams& params) {
    const double rho = params.rho, L = params.L;
    return rho * m.second + 0.25 * rho * m.mass * L * L - rho * rho * L * L * L / 6.0;
}

}  // namespace

double self_interaction(const IntervalSet& set) {
    require_segment(set, "self_interaction");
    return self_interaction_raw(set.pieces());
}

Moments moments(const IntervalSet& set) {
    require_segment(set, "moments");
    return moments_raw(set.pieces());
}

double field_energy(std::span<const Interval> pieces, const ModelParams& params,
                    BoundaryCondition bc) {
    const Moments m = moments_raw(pieces);
    double value = params.gamma * (self_interaction_raw(pieces) + background_raw(m, params));
    if (bc != BoundaryCondition::neumann) value -= params.gamma / params.L * m.first * m.first;
    return value;
}

EnergyBreakdown energy(const IntervalSet& set, const ModelParams& params, BoundaryCondition bc) {
    if (set.on_torus() && bc != BoundaryCondition::periodic) {
        throw DomainError("torus sets can only be evaluated with the periodic kernel");
    }
    if (std::abs(set.box_length() - params.L) > default_merge_tol(params.L)) {
        throw DomainError("set and parameters use different box lengths");
    }
    const Moments m = moments_raw(set.pieces());
    EnergyBreakdown out;
    if (bc == BoundaryCondition::periodic) {
        out.perimeter = set.on_torus() ? perimeter(set) : torus_perimeter_of_segment(set);
    } else {
        out.perimeter = perimeter(set);
    }
    out.self_term = self_interaction_raw(set.pieces());
    out.background_term = background_raw(m, params);
    out.moment_correction =
        bc == BoundaryCondition::neumann ? 0.0 : -params.gamma / params.L * m.first * m.first;
    out.total = out.perimeter + params.gamma * (out.self_term + out.background_term) +
                out.moment_correction;
    return out;
}

CompletedSquare completed_square_terms(const IntervalSet& set, double rho) {
    require_segment(set, "completed_square_terms");
    if (!(rho > 0.0 && rho <= 1.0)) throw ParameterError("rho must lie in (0, 1]");
    const auto& pieces = set.pieces();
    double total = 0.0, cubes = 0.0;
    for (const auto& p : pieces) {
        total += p.length;
        cubes += p.length * p.length * p.length;
    }
    CompletedSquare out;
    double before = 0.0;
    for (const auto& p : pieces) {
        const double after = total - before - p.length;
        const double shift = p.center - (before - after) / (2.0 * rho);
        out.square_term += rho * p.length * shift * shift;
        before += p.length;
    }
    out.cubic_term = (1.0 - rho) * (1.0 - rho) / (12.0 * rho) * cubes;
    out.bulk_term = -total * total * total / (12.0 * rho);
    return out;
}

double cubic_sum_identity_residual(std::span<const double> lengths) {
    double total = 0.0;
    for (double q : lengths) total += q;
    double lhs = 0.0, before = 0.0;
    for (double q : lengths) {
        const double imbalance = before - (total - before - q);
        lhs += q * imbalance * imbalance + q * q * q / 3.0;
        before += q;
    }
    return lhs - total * total * total / 3.0;
}

IntervalSet complement(const IntervalSet& set, double merge_tol) {
    require_segment(set, "complement");
    const double half = 0.5 * set.box_length();
    std::vector<Endpoints> gaps;
    double cursor = -half;
    for (const auto& p : set.pieces()) {
        gaps.emplace_back(cursor, p.left());
        cursor = p.right();
    }
    gaps.emplace_back(cursor, half);
    return make_interval_set(gaps, set.domain(), merge_tol);
}

}  // namespace ldm
