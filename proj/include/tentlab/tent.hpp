#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "tentlab/scalar.hpp"

namespace tentlab {

/// Parameters of the tent map T_h(x) = h*x on [0, 1/2], h*(1-x) on (1/2, 1].
class MapParams {
 public:
  /// Throws out_of_domain unless 1 < h <= 2.
  explicit MapParams(Scalar h);

  const Scalar& h() const noexcept { return h_; }
  BackendSpec backend() const { return h_.backend(); }
  const Scalar& one() const noexcept { return one_; }

 private:
  Scalar h_;
  Scalar one_;
};

struct Orbit {
  MapParams params;
  int power = 1;  // orbit of T^power
  Scalar x0;
  std::vector<Scalar> points;
};

struct Itinerary {
  std::string symbols;  // 'L' / 'R' per step
  Scalar slope_product;
};

Scalar tent_step(const Scalar& x, const MapParams& params);
Scalar tent_power_step(const Scalar& x, const MapParams& params, int k);
Orbit orbit(const Scalar& x0, const MapParams& params, int k, std::size_t steps);
Itinerary itinerary(const Scalar& x0, const MapParams& params, int n);

/// Slope of the branch containing x: +h on the left, -h on the right.
Scalar branch_slope(const Scalar& x, const MapParams& params);

}  // namespace tentlab
