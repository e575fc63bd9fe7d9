#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tentlab/stabilizer.hpp"
#include "tentlab/tent.hpp"

namespace tentlab {

/// Grid of initial points: uniform(N) is i/N and triadic(m) is i/(5*3^m),
/// both with i running over 0..denominator inclusive.
struct NetSpec {
  enum class Kind { uniform, triadic };
  Kind kind = Kind::uniform;
  long parameter = 10;  // N for uniform, m for triadic

  static NetSpec uniform(long n);
  static NetSpec triadic(long m);

  long denominator() const;
  std::size_t size() const { return static_cast<std::size_t>(denominator()) + 1; }
};

inline constexpr std::size_t max_net_size = 10'000'000;

/// "uniform:N" or "triadic:m".
NetSpec parse_net(std::string_view text);
std::string to_string(const NetSpec& net);

std::vector<Scalar> build_net(const NetSpec& net, const BackendSpec& backend);

enum class OutcomeKind { cycle_low, cycle_high, fixed_point, unresolved };
inline constexpr std::size_t outcome_kind_count = 4;

/// "cycle_low", "cycle_high", "fixed_point", "unresolved".
std::string_view to_string(OutcomeKind kind);

struct Outcome {
  OutcomeKind variant = OutcomeKind::unresolved;
  Scalar final_value;
  double distance = 0.0;  // to the nearest target, whether or not it matched
};

/// Nearest of the two 2-cycle points and the interior fixed point, if it is
/// closer than `tolerance`. Exact ties go to the cycle.
Outcome classify_value(const Scalar& value, const MapParams& params, double tolerance);
Outcome classify_outcome(const StabRun& run, const MapParams& params, double tolerance);

struct SweepOptions {
  int k = 2;
  std::size_t steps = 50;
  double tolerance = 1e-3;
  unsigned threads = 0;  // 0 = hardware concurrency
};

struct SweepRow {
  Scalar x0;
  Outcome outcome;
};

struct SweepResult {
  NetSpec net;
  std::size_t steps = 0;
  double tolerance = 0.0;
  std::vector<SweepRow> rows;  // in net order
  std::array<std::size_t, outcome_kind_count> counts{};

  std::size_t count(OutcomeKind kind) const { return counts[static_cast<std::size_t>(kind)]; }
};

SweepResult sweep(const NetSpec& net, const MapParams& params, const Coefficients& coeffs,
                  const SweepOptions& options);

struct EscapeCriteria {
  double flat_tol = 1e-9;
  double jump_tol = 1e-3;
  std::size_t min_flat = 30;
};

/// A long near-constant stretch followed by a departure. Values stay within
/// flat_tol of flat_value on [flat_start, flat_end); escape_index is the
/// first later index whose distance from flat_value reaches jump_tol.
struct EscapeEvent {
  Scalar flat_value;
  std::size_t flat_start = 0;
  std::size_t flat_end = 0;
  std::size_t escape_index = 0;
  Scalar terminal_value;
};

std::optional<EscapeEvent> detect_escape(std::span<const Scalar> series, const EscapeCriteria& criteria = {});

/// Orbit of the critical point 1/2 under T_h.
Orbit chaotic_series(const MapParams& params, std::size_t steps);

struct Sqrt2Result {
  Orbit orbit;
  Scalar reference;  // 2 - sqrt(2) at the working precision
  std::optional<EscapeEvent> escape;
};

inline constexpr EscapeCriteria sqrt2_escape_criteria{1e-40, 1e-2, 30};

/// Decimal-precision orbit of 1/2 under T_h for h given as a digit string,
/// checked against the fixed value 2 - sqrt(2) of the exact map.
Sqrt2Result sqrt2_experiment(std::string_view h_digits, int precision, std::size_t steps,
                             const EscapeCriteria& criteria = sqrt2_escape_criteria);

/// 2 - sqrt(2) rounded to `precision` digits, from an integer square root.
Scalar two_minus_sqrt2(int precision);

}  // namespace tentlab
