#include "tentlab/experiments.hpp"

#include <algorithm>
#include <charconv>
#include <thread>

#include "tentlab/cycles.hpp"

namespace tentlab {

namespace {

struct Targets {
  Scalar low;
  Scalar high;
  Scalar fixed;
};

Targets targets_for(const MapParams& params) {
  auto [low, high] = two_cycle(params);
  return {low, high, fixed_point(params)};
}

Outcome classify_against(const Scalar& value, const Targets& targets, double tolerance) {
  const double d_low = distance(value, targets.low);
  const double d_high = distance(value, targets.high);
  const double d_fixed = distance(value, targets.fixed);
  OutcomeKind kind = OutcomeKind::cycle_low;
  double best = d_low;
  if (d_high < best) {
    kind = OutcomeKind::cycle_high;
    best = d_high;
  }
  if (d_fixed < best) {
    kind = OutcomeKind::fixed_point;
    best = d_fixed;
  }
  if (!(best < tolerance)) kind = OutcomeKind::unresolved;
  return {kind, value, best};
}

long checked_parameter(std::string_view text, std::string_view whole) {
  long v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw Error(Errc::parse_error, "bad net specification '" + std::string(whole) + "'");
  return v;
}

}  // namespace

NetSpec NetSpec::uniform(long n) {
  if (n < 1 || static_cast<std::size_t>(n) + 1 > max_net_size)
    throw Error(Errc::invalid_argument, "uniform net size out of range");
  return {Kind::uniform, n};
}

NetSpec NetSpec::triadic(long m) {
  if (m < 0) throw Error(Errc::invalid_argument, "triadic net exponent must be non-negative");
  long denom = 5;
  for (long i = 0; i < m; ++i) {
    denom *= 3;
    if (static_cast<std::size_t>(denom) + 1 > max_net_size)
      throw Error(Errc::invalid_argument, "triadic net size exceeds the cap");
  }
  return {Kind::triadic, m};
}

long NetSpec::denominator() const {
  if (kind == Kind::uniform) return parameter;
  long denom = 5;
  for (long i = 0; i < parameter; ++i) denom *= 3;
  return denom;
}

NetSpec parse_net(std::string_view text) {
  auto colon = text.find(':');
  if (colon == std::string_view::npos)
    throw Error(Errc::parse_error, "net must look like uniform:N or triadic:m");
  std::string_view kind = text.substr(0, colon);
  long value = checked_parameter(text.substr(colon + 1), text);
  if (kind == "uniform") return NetSpec::uniform(value);
  if (kind == "triadic") return NetSpec::triadic(value);
  throw Error(Errc::parse_error, "unknown net kind '" + std::string(kind) + "'");
}

std::string to_string(const NetSpec& net) {
  return std::string(net.kind == NetSpec::Kind::uniform ? "uniform:" : "triadic:") + std::to_string(net.parameter);
}

std::vector<Scalar> build_net(const NetSpec& net, const BackendSpec& backend) {
  const long denom = net.denominator();
  std::vector<Scalar> points;
  points.reserve(net.size());
  for (long i = 0; i <= denom; ++i) {
    if (backend.kind == BackendKind::binary64) {
      // IEEE division is correctly rounded, so this is the nearest double.
      points.emplace_back(static_cast<double>(i) / static_cast<double>(denom));
    } else {
      points.push_back(Scalar::from_ratio(i, denom, backend));
    }
  }
  return points;
}

std::string_view to_string(OutcomeKind kind) {
  switch (kind) {
    case OutcomeKind::cycle_low:
      return "cycle_low";
    case OutcomeKind::cycle_high:
      return "cycle_high";
    case OutcomeKind::fixed_point:
      return "fixed_point";
    case OutcomeKind::unresolved:
      return "unresolved";
  }
  return "?";
}

Outcome classify_value(const Scalar& value, const MapParams& params, double tolerance) {
  return classify_against(value, targets_for(params), tolerance);
}

Outcome classify_outcome(const StabRun& run, const MapParams& params, double tolerance) {
  if (run.starred.empty()) throw Error(Errc::invalid_argument, "empty stabilized run");
  return classify_value(run.starred.back(), params, tolerance);
}

SweepResult sweep(const NetSpec& net, const MapParams& params, const Coefficients& coeffs,
                  const SweepOptions& options) {
  const std::vector<Scalar> starts = build_net(net, params.backend());
  const Targets targets = targets_for(params);

  SweepResult result{net, options.steps, options.tolerance, {}, {}};
  result.rows.resize(starts.size());

  unsigned threads = options.threads != 0 ? options.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, starts.size()));

  // Each worker owns a contiguous block of rows; results land at their net
  // index, so the table does not depend on scheduling.
  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      StabRun run = stabilized_orbit(starts[i], params, options.k, coeffs, options.steps);
      result.rows[i] = {starts[i], classify_against(run.starred.back(), targets, options.tolerance)};
    }
  };
  if (threads <= 1) {
    work(0, starts.size());
  } else {
    std::vector<std::jthread> pool;
    std::vector<std::exception_ptr> errors(threads);
    const std::size_t chunk = (starts.size() + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
      std::size_t begin = t * chunk;
      std::size_t end = std::min(starts.size(), begin + chunk);
      pool.emplace_back([&, t, begin, end] {
        try {
          work(begin, end);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
    pool.clear();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  for (const auto& row : result.rows) ++result.counts[static_cast<std::size_t>(row.outcome.variant)];
  return result;
}

std::optional<EscapeEvent> detect_escape(std::span<const Scalar> series, const EscapeCriteria& criteria) {
  if (criteria.min_flat < 1) throw Error(Errc::invalid_argument, "min_flat must be at least 1");
  std::optional<EscapeEvent> best;
  std::size_t start = 0;
  while (start < series.size()) {
    const Scalar& anchor = series[start];
    std::size_t end = start + 1;
    while (end < series.size() && distance(series[end], anchor) <= criteria.flat_tol) ++end;
    const std::size_t length = end - start;
    if (length >= criteria.min_flat && (!best || length > best->flat_end - best->flat_start)) {
      for (std::size_t j = end; j < series.size(); ++j) {
        if (distance(series[j], anchor) >= criteria.jump_tol) {
          best = EscapeEvent{anchor, start, end, j, series.back()};
          break;
        }
      }
    }
    start = end;
  }
  return best;
}

Orbit chaotic_series(const MapParams& params, std::size_t steps) {
  return orbit(Scalar::from_ratio(1, 2, params.backend()), params, 1, steps);
}

Scalar two_minus_sqrt2(int precision) {
  // sqrt(2) * 10^p = isqrt(2 * 10^(2p)); two guard digits before rounding.
  const int p = precision + 2;
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(p));
  mpz_class root = isqrt(2 * scale * scale);
  return Scalar(Decimal(2 * scale - root, -p, precision));
}

Sqrt2Result sqrt2_experiment(std::string_view h_digits, int precision, std::size_t steps,
                             const EscapeCriteria& criteria) {
  const BackendSpec backend = BackendSpec::decimal(precision);
  std::size_t significant = 0;
  bool leading = true;
  for (char c : h_digits) {
    if (c < '0' || c > '9') continue;
    if (leading && c == '0') continue;
    leading = false;
    ++significant;
  }
  if (significant > static_cast<std::size_t>(precision))
    throw Error(Errc::invalid_argument, "precision is smaller than the digit count of h");

  MapParams params(parse_scalar(h_digits, backend));
  Sqrt2Result out{chaotic_series(params, steps), two_minus_sqrt2(precision), std::nullopt};
  out.escape = detect_escape(out.orbit.points, criteria);
  return out;
}

}  // namespace tentlab
