#include <doctest.h>

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <random>

#include "tentlab/scalar.hpp"

using namespace tentlab;
using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;

namespace {

const BackendSpec b64 = BackendSpec::binary64();
const BackendSpec rat = BackendSpec::rational();

cpp_rational to_boost(const mpq_class& q) {
  return cpp_rational(cpp_int(q.get_num().get_str()), cpp_int(q.get_den().get_str()));
}

mpq_class from_boost(const cpp_rational& r) {
  mpq_class q(numerator(r).str() + "/" + denominator(r).str());
  q.canonicalize();
  return q;
}

cpp_rational pow10(long e) {
  cpp_rational r = 1;
  for (long i = 0; i < std::labs(e); ++i) r *= 10;
  return e < 0 ? 1 / r : r;
}

// One unit in the last place of a p-digit decimal near |v|.
cpp_rational decimal_ulp(const cpp_rational& v, int p) {
  cpp_rational a = abs(v);
  long e = 0;
  while (a >= pow10(e + 1)) ++e;
  while (a < pow10(e)) --e;
  return pow10(e - p + 1);
}

}  // namespace

TEST_CASE("backend names") {
  CHECK(to_string(parse_backend("binary64")) == "binary64");
  CHECK(parse_backend("double") == b64);
  CHECK(parse_backend("rational") == rat);
  CHECK(parse_backend("decimal", 70) == BackendSpec::decimal(70));
  CHECK(to_string(parse_backend("decimal:25")) == "decimal:25");
  CHECK_THROWS_AS(parse_backend("decimal:5"), Error);
  CHECK_THROWS_AS(parse_backend("float"), Error);
}

TEST_CASE("parse and print") {
  CHECK(parse_scalar("1.5", rat).to_string() == "3/2");
  CHECK(parse_scalar("3/2", rat).to_string() == "3/2");
  CHECK(parse_scalar("6/4", rat).to_string() == "3/2");
  CHECK(parse_scalar("0", rat).to_string() == "0/1");
  CHECK(parse_scalar("-2.5e-1", rat).to_string() == "-1/4");
  CHECK(parse_scalar("0.1", b64).to_string() == "0.1");
  CHECK(parse_scalar("1/3", b64).to_double() == 1.0 / 3.0);
  CHECK(parse_scalar("1e-3", b64).to_double() == 1e-3);
  CHECK(parse_scalar("0.25", BackendSpec::decimal(10)).to_string() == "0.2500000000");

  for (const char* bad : {"", " 1", "1 ", "abc", "1/0", "1/-2", "1..2", "--1", "1e", "0x10"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_scalar(bad, rat), Error);
  }
  try {
    parse_scalar("nope", b64);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::parse_error);
  }
}

TEST_CASE("binary64 printing round-trips") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 2000; ++i) {
    double x = u(rng);
    Scalar s(x);
    CHECK(parse_scalar(s.to_string(), b64).to_double() == x);
  }
}

TEST_CASE("decimal rounding is half-even") {
  CHECK(Scalar(Decimal(mpz_class(125), -2, 2)).to_rational() == mpq_class(6, 5));
  CHECK(Scalar(Decimal(mpz_class(135), -2, 2)).to_rational() == mpq_class(7, 5));
  CHECK(Scalar(Decimal(mpz_class(-125), -2, 2)).to_rational() == mpq_class(-6, 5));
  CHECK(Scalar(Decimal(mpz_class(1251), -3, 2)).to_rational() == mpq_class(13, 10));
  CHECK(Decimal(mpz_class(1), -1, 10).to_fixed(3) == "0.100");
  CHECK(Decimal(mpz_class(25), -1, 10).to_fixed(0) == "2");
}

TEST_CASE("decimal arithmetic stays within half an ulp of the exact result") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> digits(-999'999'999'999L, 999'999'999'999L);
  std::uniform_int_distribution<long> expo(-20, 5);
  for (int p : {10, 25, 70}) {
    for (int i = 0; i < 400; ++i) {
      Decimal a(mpz_class(std::to_string(digits(rng))), expo(rng), p);
      Decimal b(mpz_class(std::to_string(digits(rng))), expo(rng), p);
      if (b.sign() == 0) continue;
      const cpp_rational ea = to_boost(a.to_rational()), eb = to_boost(b.to_rational());
      const std::pair<Decimal, cpp_rational> cases[] = {
          {a + b, ea + eb}, {a - b, ea - eb}, {a * b, ea * eb}, {a / b, ea / eb}};
      for (const auto& [got, exact] : cases) {
        if (exact == 0) {
          CHECK(got.sign() == 0);
          continue;
        }
        cpp_rational err = abs(to_boost(got.to_rational()) - exact);
        CHECK(err * 2 <= decimal_ulp(exact, p));
      }
    }
  }
}

TEST_CASE("rational arithmetic agrees with an independent rational type") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long> num(-1'000'000, 1'000'000), den(1, 1'000'000);
  for (int i = 0; i < 1000; ++i) {
    mpq_class qa(num(rng), den(rng)), qb(num(rng), den(rng));
    qa.canonicalize();
    qb.canonicalize();
    Scalar a(qa), b(qb);
    cpp_rational ba = to_boost(qa), bb = to_boost(qb);
    CHECK((a + b).to_rational() == from_boost(ba + bb));
    CHECK((a - b).to_rational() == from_boost(ba - bb));
    CHECK((a * b).to_rational() == from_boost(ba * bb));
    if (qb != 0) CHECK((a / b).to_rational() == from_boost(ba / bb));
    CHECK(((a <=> b) < 0) == (ba < bb));
  }
}

TEST_CASE("nearest_double matches IEEE division") {
  // For |p|, q < 2^53 both convert exactly, and IEEE division is correctly rounded.
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::int64_t> p(-(1LL << 53) + 1, (1LL << 53) - 1), q(1, (1LL << 53) - 1);
  for (int i = 0; i < 5000; ++i) {
    std::int64_t a = p(rng), b = q(rng);
    mpq_class r(mpz_class(std::to_string(a)), mpz_class(std::to_string(b)));
    r.canonicalize();
    CHECK(nearest_double(r) == static_cast<double>(a) / static_cast<double>(b));
  }
  CHECK(nearest_double(mpq_class(0)) == 0.0);
  CHECK(nearest_double(mpq_class(1, 3)) == 1.0 / 3.0);
}

TEST_CASE("mixed backends are rejected") {
  Scalar a = Scalar::from_int(1, b64), b = Scalar::from_int(1, rat);
  try {
    (void)(a + b);
    FAIL("expected backend_mismatch");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::backend_mismatch);
  }
  CHECK(a == b);  // comparison is exact across backends
  CHECK(Scalar::from_ratio(1, 10, b64) != Scalar::from_ratio(1, 10, rat));
}

TEST_CASE("helpers") {
  CHECK(cmp_half(Scalar::from_ratio(1, 2, rat)) == Branch::left);
  CHECK(cmp_half(parse_scalar("0.5000000001", b64)) == Branch::right);
  CHECK_THROWS_AS(cmp_half(Scalar::from_int(2, rat)), Error);
  CHECK(distance(Scalar::from_ratio(6, 13, rat), Scalar::from_ratio(9, 13, rat)) == 3.0 / 13.0);
  CHECK(affine(Scalar::from_int(2, rat), Scalar::from_ratio(1, 3, rat), Scalar::from_int(1, rat)).to_string() ==
        "5/3");
  for (long n : {0L, 1L, 2L, 3L, 4L, 99L, 100L, 101L, 1'000'000'007L}) {
    mpz_class r = isqrt(mpz_class(n));
    CHECK(r * r <= n);
    CHECK((r + 1) * (r + 1) > n);
  }
  Scalar d = parse_scalar("-0.125", BackendSpec::decimal(12));
  CHECK(d.abs().to_rational() == mpq_class(1, 8));
  CHECK(d.convert(rat).to_string() == "-1/8");
}
