// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "ldm/model.hpp"

namespace ldm::sampling {

/// Seeded 64-bit engine; values are reproducible across platforms because
/// uniform() below does not go through std distributions.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    /// Uniform integer in [lo, hi].
    int integer(int lo, int hi);

  private:
    std::mt19937_64 engine_;
};

/// Flat Dirichlet sample of n positive weights summing to `total`.
std::vector<double> simplex(Rng& rng, std::size_t n, double total);

/// Random segment set with 1..max_pieces intervals and every gap and length
/// bounded away from zero.  mass < 0 draws the mass uniformly in (0.05 L, 0.95 L).
IntervalSet random_segment_set(Rng& rng, double L, int max_pieces, double mass = -1.0);

/// Same, with exactly n pieces.
IntervalSet random_segment_set_exact(Rng& rng, double L, int n, double mass);

/// Random set on the circle; may include a component crossing the cut.
IntervalSet random_torus_set(Rng& rng, double L, int max_pieces, double mass);

/// Random parameters with gamma in [0.25, 4], rho in [0.05, 0.95], L in [L_lo, L_hi].
ModelParams random_params(Rng& rng, double L_lo, double L_hi);

}  // namespace ldm::sampling
