#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "tentlab/tent.hpp"

namespace tentlab {

inline constexpr int tap_count = 6;

/// Averaging weights a_1..a_6; a_1 multiplies the most recent state.
struct Coefficients {
  Scalar sigma;
  std::array<Scalar, tap_count> a;
  Scalar c;  // normalization constant, 1 / sum of the raw weights
};

/// Argument of the 6-dimensional companion map; u[5] is the newest value.
struct CompanionState {
  std::array<Scalar, tap_count> u;
};

/// Averaged ("starred") sequence of f = T^k started from x0. The first six
/// entries are plain iterates x0, f(x0), ..., f^5(x0).
struct StabRun {
  MapParams params;
  int k = 2;
  Coefficients coeffs;
  Scalar x0;
  std::vector<Scalar> starred;
};

struct Spectrum {
  std::array<double, tap_count> magnitudes{};  // descending
  double spectral_radius = 0.0;
};

struct EquilibriumReport {
  Scalar point;
  Scalar slope;  // derivative of f = T^k at the point
  double spectral_radius = 0.0;
  bool stable = false;
  bool boundary = false;  // the fixed point 0 of the cube's edge
};

Coefficients build_coefficients(const Scalar& sigma);

StabRun stabilized_orbit(const Scalar& x0, const MapParams& params, int k, const Coefficients& coeffs,
                         std::size_t steps);

CompanionState companion_step(const CompanionState& state, const MapParams& params, int k,
                              const Coefficients& coeffs);

/// Root magnitudes of lambda^6 - mu (a_1 lambda^5 + ... + a_6), the
/// characteristic polynomial of the companion map inside a cell where f has
/// slope mu.
Spectrum companion_spectrum(double mu, const Coefficients& coeffs);

/// Fixed points of f = T^k with their local spectra, sorted by point.
std::vector<EquilibriumReport> classify_equilibria(const MapParams& params, int k, const Coefficients& coeffs,
                                                   bool include_boundary = false);

}  // namespace tentlab
