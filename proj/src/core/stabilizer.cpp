#include "tentlab/stabilizer.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "tentlab/cycles.hpp"

namespace tentlab {

namespace {

void require_same_backend(const Scalar& x, const MapParams& params, const Coefficients& coeffs) {
  if (x.backend() != params.backend() || coeffs.c.backend() != params.backend())
    throw Error(Errc::backend_mismatch, "stabilizer: point, map and coefficients must share a backend");
}

// Weighted average a_1 g[0] + ... + a_6 g[5], summed left to right.
Scalar average(const Coefficients& coeffs, const std::array<const Scalar*, tap_count>& newest_first) {
  Scalar acc = coeffs.a[0] * *newest_first[0];
  for (int i = 1; i < tap_count; ++i) acc = acc + coeffs.a[static_cast<std::size_t>(i)] * *newest_first[static_cast<std::size_t>(i)];
  return acc;
}

using Complex = std::complex<double>;

struct Horner {
  Complex value;
  Complex derivative;
};

Horner horner(const std::vector<double>& coef, Complex z) {
  Complex p = coef[0];
  Complex dp = 0.0;
  for (std::size_t i = 1; i < coef.size(); ++i) {
    dp = dp * z + p;
    p = p * z + coef[i];
  }
  return {p, dp};
}

// Aberth-Ehrlich simultaneous iteration on a monic polynomial with nonzero
// constant term.
std::vector<Complex> aberth_roots(const std::vector<double>& coef) {
  constexpr int max_iterations = 500;
  constexpr double root_tolerance = 1e-10;
  const int degree = static_cast<int>(coef.size()) - 1;

  double bound = 0.0;
  for (std::size_t i = 1; i < coef.size(); ++i) bound = std::max(bound, std::abs(coef[i]));
  const double radius = std::pow(std::abs(coef.back()), 1.0 / degree);
  std::vector<Complex> z(static_cast<std::size_t>(degree));
  for (int k = 0; k < degree; ++k) {
    double angle = 2.0 * std::numbers::pi * k / degree + 0.4;
    z[static_cast<std::size_t>(k)] = std::polar(std::min(radius, 1.0 + bound), angle);
  }

  bool converged = false;
  for (int it = 0; it < max_iterations && !converged; ++it) {
    double largest_step = 0.0;
    for (std::size_t k = 0; k < z.size(); ++k) {
      Horner h = horner(coef, z[k]);
      if (h.value == 0.0) continue;
      Complex ratio = h.value / h.derivative;
      Complex repulsion = 0.0;
      for (std::size_t j = 0; j < z.size(); ++j)
        if (j != k) repulsion += 1.0 / (z[k] - z[j]);
      Complex step = ratio / (1.0 - ratio * repulsion);
      z[k] -= step;
      largest_step = std::max(largest_step, std::abs(step) / std::max(1.0, std::abs(z[k])));
    }
    converged = largest_step < 1e-15;
  }

  for (auto& root : z) {
    for (int polish = 0; polish < 2; ++polish) {
      Horner h = horner(coef, root);
      if (h.derivative != 0.0) root -= h.value / h.derivative;
    }
    Horner h = horner(coef, root);
    double correction = h.derivative == 0.0 ? std::abs(h.value) : std::abs(h.value / h.derivative);
    if (!std::isfinite(correction) || correction > root_tolerance * std::max(1.0, std::abs(root)))
      throw Error(Errc::no_convergence, "companion spectrum: root finder did not converge");
  }
  return z;
}

}  // namespace

Coefficients build_coefficients(const Scalar& sigma) {
  const BackendSpec backend = sigma.backend();
  const auto num = [&](long n) { return Scalar::from_int(n, backend); };
  if (sigma <= num(1)) throw Error(Errc::out_of_domain, "sigma must be greater than 1");

  const Scalar s3 = sigma * sigma * sigma;
  const Scalar s5 = s3 * sigma * sigma;
  const Scalar s7 = s5 * sigma * sigma;
  const Scalar outer = s7 - s5;
  const Scalar middle = num(3) * s7 - num(5) * s5 + num(2) * s3;
  const Scalar inner = num(5) * s7 - num(10) * s5 + num(6) * s3 - sigma;
  const std::array<Scalar, tap_count> raw = {num(6) * outer, num(5) * middle, num(4) * inner,
                                             num(3) * inner, num(2) * middle, outer};
  Scalar total = raw[0];
  for (std::size_t i = 1; i < raw.size(); ++i) total = total + raw[i];

  Coefficients out{sigma, {}, num(1) / total};
  for (std::size_t i = 0; i < raw.size(); ++i) out.a[i] = out.c * raw[i];
  return out;
}

StabRun stabilized_orbit(const Scalar& x0, const MapParams& params, int k, const Coefficients& coeffs,
                         std::size_t steps) {
  require_same_backend(x0, params, coeffs);
  if (steps < static_cast<std::size_t>(tap_count))
    throw Error(Errc::invalid_argument, "stabilized orbit needs at least 6 steps");

  StabRun run{params, k, coeffs, x0, {}};
  auto& xs = run.starred;
  xs.reserve(steps + 1);
  // images[m] = f(x*_m); each f evaluation is done once and reused.
  std::vector<Scalar> images;
  images.reserve(steps);

  xs.push_back(x0);
  for (int m = 0; m < tap_count - 1; ++m) {
    images.push_back(tent_power_step(xs.back(), params, k));
    xs.push_back(images.back());
  }
  for (std::size_t n = tap_count; n <= steps; ++n) {
    images.push_back(tent_power_step(xs[n - 1], params, k));
    std::array<const Scalar*, tap_count> newest_first{};
    for (std::size_t i = 0; i < tap_count; ++i) newest_first[i] = &images[n - 1 - i];
    xs.push_back(average(coeffs, newest_first));
  }
  return run;
}

CompanionState companion_step(const CompanionState& state, const MapParams& params, int k,
                              const Coefficients& coeffs) {
  std::array<Scalar, tap_count> images;
  for (std::size_t i = 0; i < tap_count; ++i) {
    require_same_backend(state.u[i], params, coeffs);
    images[i] = tent_power_step(state.u[i], params, k);
  }
  std::array<const Scalar*, tap_count> newest_first{};
  for (std::size_t i = 0; i < tap_count; ++i) newest_first[i] = &images[tap_count - 1 - i];

  CompanionState next;
  for (std::size_t i = 0; i + 1 < tap_count; ++i) next.u[i] = state.u[i + 1];
  next.u[tap_count - 1] = average(coeffs, newest_first);
  return next;
}

Spectrum companion_spectrum(double mu, const Coefficients& coeffs) {
  if (!std::isfinite(mu)) throw Error(Errc::invalid_argument, "slope must be finite");
  std::vector<double> coef{1.0};
  for (const auto& a : coeffs.a) coef.push_back(-mu * a.to_double());

  // Zero roots split off exactly (all of them when mu = 0).
  int zero_roots = 0;
  while (coef.size() > 1 && coef.back() == 0.0) {
    coef.pop_back();
    ++zero_roots;
  }
  std::vector<double> magnitudes(static_cast<std::size_t>(zero_roots), 0.0);
  if (coef.size() > 1)
    for (const auto& root : aberth_roots(coef)) magnitudes.push_back(std::abs(root));

  std::sort(magnitudes.begin(), magnitudes.end(), std::greater<>());
  Spectrum out;
  std::copy(magnitudes.begin(), magnitudes.end(), out.magnitudes.begin());
  out.spectral_radius = out.magnitudes[0];
  return out;
}

std::vector<EquilibriumReport> classify_equilibria(const MapParams& params, int k, const Coefficients& coeffs,
                                                   bool include_boundary) {
  if (k < 1 || k > max_enumeration_period)
    throw Error(Errc::unsupported, "map power must be in [1, " + std::to_string(max_enumeration_period) + "]");
  std::vector<EquilibriumReport> out;
  for (int d = 1; d <= k; ++d) {
    if (k % d != 0) continue;
    for (const Cycle& c : enumerate_cycles(params, d)) {
      // Every point of a d-cycle is fixed by T^k; its slope is the cycle
      // multiplier taken k/d times around.
      Scalar slope = params.one();
      for (int r = 0; r < k / d; ++r) slope = slope * c.multiplier;
      for (const Scalar& p : c.points) {
        bool boundary = p.is_zero();
        if (boundary && !include_boundary) continue;
        Spectrum spec = companion_spectrum(slope.to_double(), coeffs);
        out.push_back({p, slope, spec.spectral_radius, spec.spectral_radius < 1.0, boundary});
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.point < b.point; });
  return out;
}

}  // namespace tentlab
