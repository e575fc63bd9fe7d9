#include <doctest.h>

#include <cmath>
#include <random>

#include "tentlab/experiments.hpp"

using namespace tentlab;

namespace {

const BackendSpec b64 = BackendSpec::binary64();
const BackendSpec rat = BackendSpec::rational();

Scalar q(long p, long d) { return Scalar::from_ratio(p, d, rat); }

std::vector<Scalar> doubles(std::initializer_list<double> xs) {
  std::vector<Scalar> out;
  for (double x : xs) out.emplace_back(x);
  return out;
}

}  // namespace

TEST_CASE("nets") {
  auto u10 = build_net(NetSpec::uniform(10), rat);
  REQUIRE(u10.size() == 11);
  CHECK(u10.front().to_string() == "0/1");
  CHECK(u10[3].to_string() == "3/10");
  CHECK(u10.back().to_string() == "1/1");

  auto t1 = build_net(parse_net("triadic:1"), rat);
  REQUIRE(t1.size() == 16);
  CHECK(t1[4] == q(4, 15));
  CHECK(t1[11] == q(11, 15));

  auto big = build_net(parse_net("uniform:100000"), b64);
  CHECK(big.size() == 100001);
  CHECK(big[40000].to_double() == 0.4);
  CHECK(big[60000].to_double() == 0.6);

  CHECK(to_string(parse_net("triadic:5")) == "triadic:5");
  CHECK(parse_net("triadic:5").size() == 1216);
  for (const char* bad : {"uniform", "uniform:", "uniform:x", "uniform:0", "grid:4", "triadic:-1", "uniform:100000000"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_net(bad), Error);
  }
}

TEST_CASE("classification") {
  MapParams p(Scalar(1.5));
  CHECK(classify_value(Scalar(0.6923), p, 1e-3).variant == OutcomeKind::cycle_high);
  CHECK(classify_value(Scalar(0.4615), p, 1e-3).variant == OutcomeKind::cycle_low);
  CHECK(classify_value(Scalar(0.6), p, 1e-3).variant == OutcomeKind::fixed_point);
  Outcome far = classify_value(Scalar(0.25), p, 1e-3);
  CHECK(far.variant == OutcomeKind::unresolved);
  CHECK(far.distance == doctest::Approx(6.0 / 13 - 0.25));
  // The tolerance is strict.
  MapParams exact(q(3, 2));
  CHECK(classify_value(q(3, 5) + q(1, 1000), exact, 1e-3).variant == OutcomeKind::unresolved);
  CHECK(classify_value(q(3, 5) + q(1, 1001), exact, 1e-3).variant == OutcomeKind::fixed_point);
  CHECK(to_string(OutcomeKind::cycle_high) == "cycle_high");
}

TEST_CASE("small sweeps") {
  MapParams p(Scalar(1.5));
  Coefficients c = build_coefficients(Scalar(1.2));
  SweepResult r = sweep(NetSpec::uniform(10), p, c, {2, 50, 1e-3, 1});
  REQUIRE(r.rows.size() == 11);
  std::size_t total = 0;
  for (auto n : r.counts) total += n;
  CHECK(total == 11);
  CHECK(r.rows[4].outcome.variant == OutcomeKind::fixed_point);
  CHECK(r.rows[6].outcome.variant == OutcomeKind::fixed_point);
  CHECK(r.rows[1].outcome.variant == OutcomeKind::cycle_high);
  CHECK(r.rows[2].outcome.variant == OutcomeKind::cycle_low);

  MapParams exact(q(3, 2));
  SweepResult t = sweep(NetSpec::triadic(1), exact, build_coefficients(q(6, 5)), {2, 30, 1e-3, 2});
  CHECK(t.rows[4].outcome.variant == OutcomeKind::fixed_point);   // 4/15
  CHECK(t.rows[11].outcome.variant == OutcomeKind::fixed_point);  // 11/15
}

TEST_CASE("sweep determinism under any thread count") {
  MapParams p(Scalar(1.5));
  Coefficients c = build_coefficients(Scalar(1.2));
  SweepResult base = sweep(NetSpec::uniform(5000), p, c, {2, 50, 1e-3, 1});
  for (unsigned threads : {0u, 2u, 3u, 7u, 16u}) {
    CAPTURE(threads);
    SweepResult r = sweep(NetSpec::uniform(5000), p, c, {2, 50, 1e-3, threads});
    CHECK(r.counts == base.counts);
    bool same = true;
    for (std::size_t i = 0; i < r.rows.size() && same; ++i)
      same = r.rows[i].outcome.final_value.value() == base.rows[i].outcome.final_value.value() &&
             r.rows[i].outcome.variant == base.rows[i].outcome.variant;
    CHECK(same);
  }
}

TEST_CASE("escape detection on synthetic series") {
  std::vector<Scalar> s;
  for (int i = 0; i < 5; ++i) s.emplace_back(0.1 * i);
  for (int i = 0; i < 40; ++i) s.emplace_back(0.6 + 1e-12 * i);
  for (int i = 0; i < 10; ++i) s.emplace_back(0.6 + 1e-6 * std::pow(4.0, i));
  auto e = detect_escape(s);
  REQUIRE(e);
  CHECK(e->flat_start == 5);
  CHECK(e->flat_value.to_double() == 0.6);
  CHECK(e->flat_end == 45);
  // First index whose deviation reaches 1e-3: 1e-6 * 4^5 = 1.024e-3.
  CHECK(e->escape_index == 50);
  CHECK(e->terminal_value.to_double() == s.back().to_double());
  for (std::size_t i = e->flat_start; i < e->escape_index; ++i)
    CHECK(distance(s[i], e->flat_value) < 1e-3);

  // Flat without a jump, or too short to count.
  std::vector<Scalar> flat(50, Scalar(0.3));
  CHECK(!detect_escape(flat));
  auto short_flat = doubles({0.5, 0.5, 0.5, 0.9});
  CHECK(!detect_escape(short_flat));
  CHECK(detect_escape(short_flat, {1e-9, 1e-3, 3}));
  CHECK_THROWS_AS(detect_escape(short_flat, {1e-9, 1e-3, 0}), Error);
}

TEST_CASE("escape in the binary64 run from 0.4 and none in exact arithmetic") {
  Coefficients c = build_coefficients(Scalar(1.2));
  StabRun run = stabilized_orbit(Scalar(0.4), MapParams(Scalar(1.5)), 2, c, 300);
  auto e = detect_escape(run.starred);
  REQUIRE(e);
  CHECK(std::fabs(e->flat_value.to_double() - 0.6) < 1e-9);
  CHECK(e->escape_index >= 60);
  CHECK(e->escape_index <= 300);
  Outcome end = classify_value(e->terminal_value, MapParams(Scalar(1.5)), 1e-3);
  CHECK((end.variant == OutcomeKind::cycle_low || end.variant == OutcomeKind::cycle_high));

  StabRun exact = stabilized_orbit(q(2, 5), MapParams(q(3, 2)), 2, build_coefficients(q(6, 5)), 300);
  CHECK(!detect_escape(exact.starred));
}

TEST_CASE("chaotic series") {
  Orbit o = chaotic_series(MapParams(Scalar(1.5)), 300);
  CHECK(o.points.size() == 301);
  CHECK(o.points[0].to_double() == 0.5);
  CHECK(o.points[1].to_double() == 0.75);
  CHECK(o.points[2].to_double() == 0.375);
}

TEST_CASE("2 - sqrt(2)") {
  for (int p : {10, 40, 70, 120}) {
    Scalar r = two_minus_sqrt2(p);
    // (2 - r)^2 should be 2 to about p significant digits.
    mpq_class s = 2 - r.to_rational();
    mpq_class err = s * s - 2;
    CHECK(std::fabs(err.get_d()) < std::pow(10.0, -(p - 1)));
  }
  CHECK(two_minus_sqrt2(20).to_string() == "0.58578643762690495120");
}

TEST_CASE("sqrt2 experiment basics") {
  const char* h = "1.414213562373095048801688724209698078569671875376948073176";
  Sqrt2Result r = sqrt2_experiment(h, 70, 10);
  REQUIRE(r.orbit.points.size() == 11);
  CHECK(distance(r.orbit.points[3], r.reference) < 1e-55);
  CHECK_THROWS_AS(sqrt2_experiment(h, 40, 10), Error);
}
