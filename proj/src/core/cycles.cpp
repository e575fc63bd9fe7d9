#include "tentlab/cycles.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

namespace tentlab {

namespace {

// Slack used when testing branch membership and point equality. Rational
// arithmetic is exact; the rounded backends get a few ulps of room.
Scalar tolerance_for(const BackendSpec& backend) {
  switch (backend.kind) {
    case BackendKind::binary64:
      return Scalar(1e-12);
    case BackendKind::rational:
      return Scalar::from_int(0, backend);
    case BackendKind::decimal:
      return parse_scalar("1e-" + std::to_string(backend.precision_digits - 5), backend);
  }
  return {};
}

bool is_primitive(std::uint32_t word, int n) {
  const std::uint32_t mask = n == 32 ? ~0u : ((1u << n) - 1u);
  for (int d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    std::uint32_t rotated = ((word >> d) | (word << (n - d))) & mask;
    if (rotated == word) return false;
  }
  return true;
}

bool is_right(std::uint32_t word, int t) { return ((word >> t) & 1u) != 0; }

struct AffinePiece {
  Scalar slope;
  Scalar intercept;
};

// T^n restricted to the cell with the given itinerary, starting at step `start`.
AffinePiece compose(std::uint32_t word, int n, int start, const MapParams& params) {
  const Scalar& h = params.h();
  Scalar s = params.one();
  Scalar b = Scalar::from_int(0, params.backend());
  for (int i = 0; i < n; ++i) {
    int t = (start + i) % n;
    if (is_right(word, t)) {
      s = -(h * s);
      b = h - h * b;
    } else {
      s = h * s;
      b = h * b;
    }
  }
  return {s, b};
}

Scalar apply_piece(bool right, const Scalar& x, const MapParams& params) {
  return right ? params.h() * (params.one() - x) : params.h() * x;
}

std::string word_symbols(std::uint32_t word, int n) {
  std::string s(static_cast<std::size_t>(n), 'L');
  for (int t = 0; t < n; ++t)
    if (is_right(word, t)) s[static_cast<std::size_t>(t)] = 'R';
  return s;
}

bool same_points(const Cycle& a, const Cycle& b, const Scalar& tol) {
  if (a.points.size() != b.points.size()) return false;
  for (std::size_t i = 0; i < a.points.size(); ++i)
    if ((a.points[i] - b.points[i]).abs() > tol) return false;
  return true;
}

// x = b / (1 - s). The binary64 quotient of 0 by a negative number is -0,
// which would print as "-0".
Scalar solve_fixed(const AffinePiece& piece, const MapParams& params) {
  if (piece.intercept.is_zero()) return Scalar::from_int(0, params.backend());
  return piece.intercept / (params.one() - piece.slope);
}

}  // namespace

Scalar fixed_point(const MapParams& params) { return params.h() / (params.h() + params.one()); }

std::pair<Scalar, Scalar> two_cycle(const MapParams& params) {
  const Scalar& h = params.h();
  Scalar h2 = h * h;
  Scalar denom = params.one() + h2;
  return {h / denom, h2 / denom};
}

std::vector<Cycle> enumerate_cycles(const MapParams& params, int n) {
  if (n < 1 || n > max_enumeration_period)
    throw Error(Errc::unsupported,
                "cycle period must be in [1, " + std::to_string(max_enumeration_period) + "]");
  const BackendSpec backend = params.backend();
  const bool exact = backend.kind == BackendKind::rational;
  const Scalar tol = tolerance_for(backend);
  const Scalar zero = Scalar::from_int(0, backend);
  const Scalar half = Scalar::from_ratio(1, 2, backend);
  const Scalar lower = zero - tol;
  const Scalar upper = params.one() + tol;

  std::vector<Cycle> found;
  const std::uint32_t words = 1u << n;
  for (std::uint32_t word = 0; word < words; ++word) {
    if (!is_primitive(word, n)) continue;
    AffinePiece piece = compose(word, n, 0, params);
    Scalar x = solve_fixed(piece, params);

    std::vector<Scalar> points;
    points.reserve(static_cast<std::size_t>(n));
    bool consistent = true;
    Scalar p = x;
    for (int t = 0; t < n && consistent; ++t) {
      bool right = is_right(word, t);
      if (p < lower || p > upper) {
        consistent = false;
      } else if (exact) {
        consistent = right ? p > half : p <= half;
      } else {
        consistent = right ? p >= half - tol : p <= half + tol;
      }
      points.push_back(p);
      p = apply_piece(right, p, params);
    }
    if (!consistent) continue;

    // Keep only the rotation that starts at the smallest point; a point
    // repeated within tolerance means the period is not minimal.
    bool canonical = true;
    for (int t = 1; t < n && canonical; ++t)
      canonical = points[static_cast<std::size_t>(t)] - points[0] > tol;
    if (!canonical) continue;

    if (!exact) {
      // Solve each rotation directly instead of trusting the forward
      // iteration, whose error grows like h^t.
      for (int t = 1; t < n; ++t) {
        AffinePiece rotated = compose(word, n, t, params);
        points[static_cast<std::size_t>(t)] = solve_fixed(rotated, params);
      }
    }
    std::vector<Scalar> sorted = points;
    std::sort(sorted.begin(), sorted.end());
    bool distinct = true;
    for (std::size_t i = 1; i < sorted.size() && distinct; ++i) distinct = sorted[i] - sorted[i - 1] > tol;
    if (!distinct) continue;

    found.push_back(Cycle{n, std::move(points), word_symbols(word, n), piece.slope});
  }

  std::sort(found.begin(), found.end(), [](const Cycle& a, const Cycle& b) {
    if (a.points[0] != b.points[0]) return a.points[0] < b.points[0];
    return a.itinerary < b.itinerary;
  });
  if (exact) return found;

  // Seam points (orbit through 1/2) solve two adjacent cells; keep the
  // L-attributed copy, which sorts first.
  std::vector<Cycle> unique;
  for (auto& c : found) {
    auto dup = std::find_if(unique.begin(), unique.end(), [&](const Cycle& u) { return same_points(u, c, tol); });
    if (dup == unique.end()) {
      unique.push_back(std::move(c));
    } else if (c.itinerary < dup->itinerary) {
      *dup = std::move(c);
    }
  }
  return unique;
}

OnsetRecord onset_threshold(int period) {
  OnsetRecord rec;
  rec.period = period;
  switch (period) {
    case 3:
      rec.polynomial = {1, -1, -1};
      break;
    case 5:
      rec.polynomial = {1, -1, -1, 1, -1};
      break;
    case 6:
      // h^2 = phi, so h is the positive root of h^4 - h^2 - 1.
      rec.polynomial = {1, 0, -1, 0, -1};
      break;
    case 7:
      rec.polynomial = {1, -1, -1, 1, -1, 1, -1};
      break;
    default:
      throw Error(Errc::unsupported, "onset threshold is only tabulated for periods 3, 5, 6, 7");
  }

  // Walk down from h = 2 to the first sign change, then bisect.
  constexpr double scan_step = 1e-3;
  constexpr double tolerance = 1e-12;
  constexpr int max_iterations = 200;
  double hi = 2.0;
  double f_hi = evaluate_polynomial(rec.polynomial, hi);
  double lo = hi;
  double f_lo = f_hi;
  while (f_hi != 0.0) {
    lo = hi - scan_step;
    if (lo <= 1.0) throw Error(Errc::no_convergence, "no root of the onset polynomial in (1, 2]");
    f_lo = evaluate_polynomial(rec.polynomial, lo);
    if (f_lo == 0.0 || (f_lo < 0) != (f_hi < 0)) break;
    hi = lo;
    f_hi = f_lo;
  }
  double root = hi;
  if (f_hi != 0.0 && f_lo == 0.0) root = lo;
  if (f_hi != 0.0 && f_lo != 0.0) {
    int it = 0;
    while (hi - lo > tolerance && it++ < max_iterations) {
      double mid = 0.5 * (lo + hi);
      double f_mid = evaluate_polynomial(rec.polynomial, mid);
      if (f_mid == 0.0) {
        lo = hi = mid;
        break;
      }
      if ((f_mid < 0) == (f_lo < 0)) {
        lo = mid;
        f_lo = f_mid;
      } else {
        hi = mid;
      }
    }
    if (hi - lo > tolerance) throw Error(Errc::no_convergence, "onset bisection did not converge");
    root = 0.5 * (lo + hi);
  }
  rec.threshold = Scalar(root);
  return rec;
}

Scalar cycle_multiplier(const Cycle& c, const MapParams& params) {
  const auto n = c.points.size();
  if (n == 0 || static_cast<int>(n) != c.period)
    throw Error(Errc::invalid_argument, "cycle has inconsistent period");
  const Scalar tol = tolerance_for(params.backend());
  // Forward images of rounded points drift by about h ulps.
  const Scalar slack = params.backend().kind == BackendKind::rational ? tol : tol * Scalar::from_int(1000, params.backend());
  Scalar product = params.one();
  for (std::size_t i = 0; i < n; ++i) {
    Scalar image = tent_step(c.points[i], params);
    if ((image - c.points[(i + 1) % n]).abs() > slack)
      throw Error(Errc::invalid_argument, "points do not form a cycle of the map");
    product = product * branch_slope(c.points[i], params);
  }
  return product;
}

double evaluate_polynomial(const std::vector<long>& coefficients, double x) {
  double acc = 0.0;
  for (long c : coefficients) acc = acc * x + static_cast<double>(c);
  return acc;
}

}  // namespace tentlab
