#pragma once

#include <string>
#include <utility>
#include <vector>

#include "tentlab/tent.hpp"

namespace tentlab {

/// A periodic orbit of minimal period `period`, stored from its smallest point.
struct Cycle {
  int period = 0;
  std::vector<Scalar> points;
  std::string itinerary;
  Scalar multiplier;  // (-1)^{#R} h^period
};

struct OnsetRecord {
  int period = 0;
  std::vector<long> polynomial;  // integer coefficients, descending degree
  Scalar threshold;              // binary64
};

/// Largest itinerary length accepted by enumerate_cycles.
inline constexpr int max_enumeration_period = 20;

/// Interior fixed point h/(h+1). The boundary point 0 is also fixed and is
/// reported by enumerate_cycles(params, 1).
Scalar fixed_point(const MapParams& params);

/// (h/(1+h^2), h^2/(1+h^2)); the map swaps the two points.
std::pair<Scalar, Scalar> two_cycle(const MapParams& params);

/// All cycles of minimal period n (n <= 20), found by solving the affine
/// fixed-point equation of T^n on each of the 2^n itinerary cells. Output is
/// sorted by first point.
std::vector<Cycle> enumerate_cycles(const MapParams& params, int n);

/// Onset parameter of the first cycle of the given period (3, 5, 6 or 7).
OnsetRecord onset_threshold(int period);

/// Product of branch slopes along the cycle; throws if the points are not a
/// cycle of the map.
Scalar cycle_multiplier(const Cycle& c, const MapParams& params);

/// Horner evaluation of an integer-coefficient polynomial (descending degree).
double evaluate_polynomial(const std::vector<long>& coefficients, double x);

}  // namespace tentlab
