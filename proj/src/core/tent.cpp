#include "tentlab/tent.hpp"

#include <cmath>
#include <limits>

namespace tentlab {

namespace {

// binary64 values within one ulp of 1 outside [0,1] are pulled back onto the
// boundary; roundoff at the seam must not abort long runs.
Scalar clamp_unit(const Scalar& x) {
  if (const double* d = std::get_if<double>(&x.value())) {
    constexpr double eps = std::numeric_limits<double>::epsilon();
    if (*d < 0.0 && *d >= -eps) return Scalar(0.0);
    if (*d > 1.0 && *d <= 1.0 + eps) return Scalar(1.0);
  }
  return x;
}

void require_positive_power(int k) {
  if (k < 1) throw Error(Errc::invalid_argument, "map power must be at least 1");
}

}  // namespace

MapParams::MapParams(Scalar h) : h_(std::move(h)), one_(Scalar::from_int(1, h_.backend())) {
  if (h_ <= one_ || h_ > Scalar::from_int(2, h_.backend()))
    throw Error(Errc::out_of_domain, "h must lie in (1, 2], got " + h_.to_string());
}

Scalar tent_step(const Scalar& x, const MapParams& params) {
  Scalar v = clamp_unit(x);
  if (v.backend() != params.backend())
    throw Error(Errc::backend_mismatch, "tent_step: point and parameter use different backends");
  if (cmp_half(v) == Branch::left) return params.h() * v;
  return params.h() * (params.one() - v);
}

Scalar tent_power_step(const Scalar& x, const MapParams& params, int k) {
  require_positive_power(k);
  Scalar v = x;
  for (int i = 0; i < k; ++i) v = tent_step(v, params);
  return v;
}

Orbit orbit(const Scalar& x0, const MapParams& params, int k, std::size_t steps) {
  require_positive_power(k);
  Orbit out{params, k, x0, {}};
  out.points.reserve(steps + 1);
  out.points.push_back(x0);
  // Validate x0 even for a zero-step orbit.
  (void)cmp_half(clamp_unit(x0));
  for (std::size_t t = 0; t < steps; ++t) out.points.push_back(tent_power_step(out.points.back(), params, k));
  return out;
}

Scalar branch_slope(const Scalar& x, const MapParams& params) {
  return cmp_half(clamp_unit(x)) == Branch::left ? params.h() : -params.h();
}

Itinerary itinerary(const Scalar& x0, const MapParams& params, int n) {
  if (n < 1) throw Error(Errc::invalid_argument, "itinerary length must be at least 1");
  Itinerary out{std::string(), params.one()};
  out.symbols.reserve(static_cast<std::size_t>(n));
  Scalar x = x0;
  for (int t = 0; t < n; ++t) {
    bool left = cmp_half(clamp_unit(x)) == Branch::left;
    out.symbols.push_back(left ? 'L' : 'R');
    out.slope_product = out.slope_product * (left ? params.h() : -params.h());
    x = tent_step(x, params);
  }
  return out;
}

}  // namespace tentlab
