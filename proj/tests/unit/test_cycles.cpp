#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "tentlab/cycles.hpp"

using namespace tentlab;

namespace {

const BackendSpec rat = BackendSpec::rational();

Scalar q(long p, long d) { return Scalar::from_ratio(p, d, rat); }

// Prime necklaces of length n over two symbols: (1/n) sum_{d|n} mu(d) 2^(n/d).
long lyndon_count(int n) {
  auto mobius = [](int m) {
    int result = 1;
    for (int p = 2; p * p <= m; ++p) {
      if (m % p) continue;
      m /= p;
      if (m % p == 0) return 0;
      result = -result;
    }
    return m > 1 ? -result : result;
  };
  long sum = 0;
  for (int d = 1; d <= n; ++d)
    if (n % d == 0) sum += mobius(d) * (1L << (n / d));
  return sum / n;
}

double tent(double x, double h) { return x <= 0.5 ? h * x : h * (1 - x); }

}  // namespace

TEST_CASE("closed forms at h = 3/2") {
  MapParams p(q(3, 2));
  CHECK(fixed_point(p).to_string() == "3/5");
  auto [lo, hi] = two_cycle(p);
  CHECK(lo.to_string() == "6/13");
  CHECK(hi.to_string() == "9/13");
  CHECK(tent_step(lo, p) == hi);
  CHECK(tent_step(hi, p) == lo);
}

TEST_CASE("enumeration at h = 3/2") {
  MapParams p(q(3, 2));
  auto one = enumerate_cycles(p, 1);
  REQUIRE(one.size() == 2);
  CHECK(one[0].points[0].to_string() == "0/1");
  CHECK(one[1].points[0].to_string() == "3/5");
  CHECK(one[1].multiplier == q(-3, 2));

  auto two = enumerate_cycles(p, 2);
  REQUIRE(two.size() == 1);
  CHECK(two[0].points[0].to_string() == "6/13");
  CHECK(two[0].points[1].to_string() == "9/13");
  CHECK(two[0].itinerary == "LR");
  CHECK(two[0].multiplier == q(-9, 4));
  CHECK(cycle_multiplier(two[0], p) == q(-9, 4));

  CHECK(enumerate_cycles(p, 3).empty());
  CHECK_THROWS_AS(enumerate_cycles(p, 0), Error);
  CHECK_THROWS_AS(enumerate_cycles(p, max_enumeration_period + 1), Error);
}

TEST_CASE("full tent map has one cycle per prime necklace") {
  MapParams p(q(2, 1));
  for (int n = 1; n <= 10; ++n) {
    CAPTURE(n);
    CHECK(static_cast<long>(enumerate_cycles(p, n).size()) == lyndon_count(n));
  }
  MapParams d(Scalar(2.0));
  for (int n = 1; n <= 8; ++n) {
    CAPTURE(n);
    CHECK(static_cast<long>(enumerate_cycles(d, n).size()) == lyndon_count(n));
  }
}

TEST_CASE("3-cycles at h = 1.7 match a grid search for roots of T^3(x) - x") {
  const double h = 1.7;
  const int samples = 2'000'000;
  std::vector<double> roots;
  auto g = [&](double x) { return tent(tent(tent(x, h), h), h) - x; };
  double prev = g(0.0);
  for (int i = 1; i <= samples; ++i) {
    double x = static_cast<double>(i) / samples;
    double cur = g(x);
    if ((prev < 0) != (cur < 0) && prev != 0.0) roots.push_back(x);
    prev = cur;
  }
  // Remove the interior fixed point h/(1+h); the root at 0 is not a sign change.
  const double fp = h / (1 + h);
  std::erase_if(roots, [&](double r) { return std::fabs(r - fp) < 1e-5; });

  auto cycles = enumerate_cycles(MapParams(Scalar(h)), 3);
  REQUIRE(!cycles.empty());
  CHECK(cycles.size() * 3 == roots.size());
  for (const auto& c : cycles) {
    for (const Scalar& x : c.points) {
      double v = x.to_double();
      CHECK(std::fabs(tent(tent(tent(v, h), h), h) - v) < 1e-12);
      bool near = std::any_of(roots.begin(), roots.end(), [&](double r) { return std::fabs(r - v) < 2e-6; });
      CHECK(near);
    }
  }
}

TEST_CASE("cycles close under the map for random parameters") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> hd(1.05, 2.0);
  for (int trial = 0; trial < 60; ++trial) {
    double h = hd(rng);
    int n = 1 + trial % 9;
    MapParams p{Scalar(h)};
    for (const auto& c : enumerate_cycles(p, n)) {
      REQUIRE(static_cast<int>(c.points.size()) == n);
      for (int i = 0; i < n; ++i) {
        double x = c.points[static_cast<std::size_t>(i)].to_double();
        double y = c.points[static_cast<std::size_t>((i + 1) % n)].to_double();
        CHECK(std::fabs(tent(x, h) - y) < 1e-12);
      }
      for (int i = 1; i < n; ++i) CHECK(c.points[0] < c.points[static_cast<std::size_t>(i)]);
      CHECK(std::fabs(c.multiplier.to_double()) == doctest::Approx(std::pow(h, n)));
    }
  }
}

TEST_CASE("onset thresholds") {
  const double golden = (1 + std::sqrt(5.0)) / 2;
  CHECK(onset_threshold(3).threshold.to_double() == doctest::Approx(golden).epsilon(1e-12));
  CHECK(onset_threshold(6).threshold.to_double() == doctest::Approx(std::sqrt(golden)).epsilon(1e-12));
  CHECK(std::fabs(onset_threshold(5).threshold.to_double() - 1.51287639) < 1e-8);
  CHECK(std::fabs(onset_threshold(7).threshold.to_double() - 1.46557123) < 1e-8);
  CHECK(onset_threshold(5).polynomial == std::vector<long>{1, -1, -1, 1, -1});
  CHECK_THROWS_AS(onset_threshold(4), Error);

  // Independent check: the cycle of that period appears just above the
  // threshold and is absent just below it.
  for (int period : {3, 5, 6, 7}) {
    CAPTURE(period);
    double t = onset_threshold(period).threshold.to_double();
    CHECK(std::fabs(evaluate_polynomial(onset_threshold(period).polynomial, t)) < 1e-10);
    CHECK(!enumerate_cycles(MapParams(Scalar(t + 1e-4)), period).empty());
    CHECK(enumerate_cycles(MapParams(Scalar(t - 1e-4)), period).empty());
  }
}

TEST_CASE("decimal backend enumeration") {
  const BackendSpec dec = BackendSpec::decimal(40);
  MapParams p(Scalar::from_ratio(3, 2, dec));
  auto two = enumerate_cycles(p, 2);
  REQUIRE(two.size() == 1);
  CHECK(distance(two[0].points[0], q(6, 13)) < 1e-38);
  CHECK(enumerate_cycles(p, 3).empty());
}

TEST_CASE("cycle_multiplier rejects non-cycles") {
  MapParams p(q(3, 2));
  Cycle bogus{2, {q(1, 3), q(1, 2)}, "LL", q(9, 4)};
  CHECK_THROWS_AS(cycle_multiplier(bogus, p), Error);
}
