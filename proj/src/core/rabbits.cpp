#include "tentlab/rabbits.hpp"

#include <algorithm>
#include <cmath>

namespace tentlab {

namespace {

constexpr int constant_digits = 50;
constexpr int working_digits = 60;

// sqrt(5) to `digits` significant digits from an integer square root.
Decimal sqrt5(int digits) {
  const unsigned long scale_digits = static_cast<unsigned long>(digits) + 5;
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, scale_digits);
  return Decimal(isqrt(5 * scale * scale), -static_cast<long>(scale_digits), digits);
}

Decimal golden_decimal(int digits) {
  const Decimal one(1, 0, digits);
  return (one + sqrt5(digits)) / Decimal(2, 0, digits);
}

}  // namespace

RecurrenceRun recurrence(const Scalar& x0, const Scalar& x1, std::size_t n) {
  if (n < 1) throw Error(Errc::invalid_argument, "recurrence length must be at least 1");
  if (x0.backend() != x1.backend()) throw Error(Errc::backend_mismatch, "recurrence seeds use different backends");
  RecurrenceRun run{x0, x1, {x0, x1}};
  run.seq.reserve(n + 1);
  for (std::size_t i = 2; i <= n; ++i) run.seq.push_back(run.seq[i - 1] + run.seq[i - 2]);
  return run;
}

std::array<Scalar, 2> apply_fibonacci_operator(const std::array<Scalar, 2>& v) { return {v[1], v[0] + v[1]}; }

Scalar golden_ratio(const BackendSpec& backend) {
  const int digits = backend.kind == BackendKind::decimal ? std::max(constant_digits, backend.precision_digits)
                                                          : constant_digits;
  const Decimal phi = golden_decimal(digits);
  if (backend.kind == BackendKind::decimal)
    return Scalar(Decimal(phi.coefficient(), phi.exponent(), backend.precision_digits));
  return Scalar::from_rational(phi.to_rational(), backend);
}

EigenData eigen_basis() {
  const Decimal phi = golden_decimal(working_digits);
  const Decimal stable = Decimal(1, 0, working_digits) - phi;  // -1/phi = 1 - phi
  EigenData e;
  e.lambda_u = Scalar(phi).to_double();
  e.lambda_s = Scalar(stable).to_double();
  e.v_u = {1.0, e.lambda_u};
  e.v_s = {1.0, e.lambda_s};
  return e;
}

EigenData decompose(const Scalar& x0, const Scalar& x1) {
  EigenData e = eigen_basis();
  const Decimal phi = golden_decimal(working_digits);
  const Decimal u0 = Decimal::from_rational(x0.to_rational(), working_digits);
  const Decimal u1 = Decimal::from_rational(x1.to_rational(), working_digits);
  // (x0, x1) = a_u (1, phi) + a_s (1, -1/phi)  =>  a_u = (x1 + x0/phi) / sqrt(5).
  const Decimal a_u = (u1 + u0 / phi) / sqrt5(working_digits);
  const Decimal a_s = u0 - a_u;
  e.a_u = Scalar(a_u).to_double();
  e.a_s = Scalar(a_s).to_double();
  return e;
}

std::optional<long> predict_escape_index(const Scalar& x0, const Scalar& x1, double threshold) {
  if (!(threshold > 0.0)) throw Error(Errc::invalid_argument, "escape threshold must be positive");
  const EigenData e = decompose(x0, x1);
  if (e.a_u == 0.0) return std::nullopt;
  const double exponent = std::log(threshold / std::fabs(e.a_u)) / std::log(e.lambda_u);
  return std::max(0L, static_cast<long>(std::floor(exponent)) + 1);
}

std::optional<std::size_t> first_exceedance(const RecurrenceRun& run, double threshold) {
  for (std::size_t n = 0; n < run.seq.size(); ++n)
    if (std::fabs(run.seq[n].to_double()) > threshold) return n;
  return std::nullopt;
}

}  // namespace tentlab
