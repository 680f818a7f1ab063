// SPDX-License-Identifier: Apache-2.0
#include "ldm/sampling.hpp"

#include <cmath>

#include "ldm/errors.hpp"

namespace ldm::sampling {

int Rng::integer(int lo, int hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<int>(engine_() % span);
}

std::vector<double> simplex(Rng& rng, std::size_t n, double total) {
    std::vector<double> w(n);
    double sum = 0.0;
    for (auto& x : w) {
        // Shifted exponentials keep every weight away from zero.
        x = 0.05 - std::log1p(-rng.uniform());
        sum += x;
    }
    for (auto& x : w) x *= total / sum;
    return w;
}

IntervalSet random_segment_set_exact(Rng& rng, double L, int n, double mass) {
    if (n < 1 || !(mass > 0.0 && mass < L)) throw ParameterError("invalid random set request");
    const auto gaps = simplex(rng, static_cast<std::size_t>(n) + 1, L - mass);
    const auto lengths = simplex(rng, static_cast<std::size_t>(n), mass);
    std::vector<Interval> pieces;
    double x = -0.5 * L + gaps[0];
    for (int i = 0; i < n; ++i) {
        const double q = lengths[static_cast<std::size_t>(i)];
        pieces.push_back({x + 0.5 * q, q});
        x += q + gaps[static_cast<std::size_t>(i) + 1];
    }
    return IntervalSet::from_canonical(std::move(pieces), Domain::segment(L));
}

IntervalSet random_segment_set(Rng& rng, double L, int max_pieces, double mass) {
    const int n = rng.integer(1, max_pieces);
    if (mass < 0.0) mass = rng.uniform(0.05, 0.95) * L;
    return random_segment_set_exact(rng, L, n, mass);
}

IntervalSet random_torus_set(Rng& rng, double L, int max_pieces, double mass) {
    const auto base = random_segment_set(rng, L, max_pieces, mass);
    const auto ends = base.endpoints();
    const auto circle = make_interval_set(ends, Domain::torus(L));
    return circle.translated(rng.uniform(0.0, L));
}

ModelParams random_params(Rng& rng, double L_lo, double L_hi) {
    return ModelParams::make(rng.uniform(0.25, 4.0), rng.uniform(0.05, 0.95),
                             rng.uniform(L_lo, L_hi));
}

}  // namespace ldm::sampling
