#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "tentlab/scalar.hpp"

namespace tentlab {

/// x_n = x_{n-1} + x_{n-2}, computed in the backend of the two seeds.
struct RecurrenceRun {
  Scalar x0;
  Scalar x1;
  std::vector<Scalar> seq;  // x_0 .. x_N
};

/// Eigen-structure of A = [[0, 1], [1, 1]] and the coordinates of a seed
/// pair (x0, x1) in its eigenbasis: (x0, x1) = a_u v_u + a_s v_s.
struct EigenData {
  double lambda_u = 0.0;  // golden ratio
  double lambda_s = 0.0;  // -1/phi
  std::array<double, 2> v_u{};
  std::array<double, 2> v_s{};
  double a_u = 0.0;
  double a_s = 0.0;
};

RecurrenceRun recurrence(const Scalar& x0, const Scalar& x1, std::size_t n);

/// A (a, b)^T = (b, a + b)^T.
std::array<Scalar, 2> apply_fibonacci_operator(const std::array<Scalar, 2>& v);

EigenData eigen_basis();
EigenData decompose(const Scalar& x0, const Scalar& x1);

/// Smallest n with |a_u| phi^n > threshold; empty when the seed lies on the
/// stable line.
std::optional<long> predict_escape_index(const Scalar& x0, const Scalar& x1, double threshold);

/// First index with |x_n| > threshold.
std::optional<std::size_t> first_exceedance(const RecurrenceRun& run, double threshold);

/// Golden ratio from a 50-digit integer square root, rounded into `backend`.
/// The rational backend receives the 50-digit decimal value exactly.
Scalar golden_ratio(const BackendSpec& backend);

}  // namespace tentlab
