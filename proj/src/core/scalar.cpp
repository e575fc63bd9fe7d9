#include "tentlab/scalar.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <system_error>
#include <type_traits>

namespace tentlab {

namespace {

mpz_class pow10(unsigned long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
  return r;
}

// Number of decimal digits of |x|; zero has one digit.
long digit_count(const mpz_class& x) {
  if (x == 0) return 1;
  mpz_class a = abs(x);
  auto d = static_cast<long>(mpz_sizeinbase(a.get_mpz_t(), 10));
  // mpz_sizeinbase may overshoot by one.
  if (a < pow10(static_cast<unsigned long>(d - 1))) --d;
  return d;
}

long bit_length(const mpz_class& x) {
  return x == 0 ? 0 : static_cast<long>(mpz_sizeinbase(x.get_mpz_t(), 2));
}

// Rounds the non-negative quotient q (with nonzero remainder flagged by
// `sticky`) half-even after dropping `drop` low decimal digits.
mpz_class round_half_even_digits(const mpz_class& q, unsigned long drop, bool sticky) {
  if (drop == 0) return q;
  mpz_class scale = pow10(drop);
  mpz_class kept, rest;
  mpz_fdiv_qr(kept.get_mpz_t(), rest.get_mpz_t(), q.get_mpz_t(), scale.get_mpz_t());
  mpz_class twice = rest * 2;
  int c = cmp(twice, scale);
  if (c > 0 || (c == 0 && sticky) || (c == 0 && mpz_odd_p(kept.get_mpz_t()))) ++kept;
  return kept;
}

// n / d rounded half-even to `precision` significant digits; n, d > 0.
// Returns (coefficient, exponent).
std::pair<mpz_class, long> divide_rounded(const mpz_class& n, const mpz_class& d, int precision) {
  long shift = std::max(0L, precision + 2 + digit_count(d) - digit_count(n));
  mpz_class num = n * pow10(static_cast<unsigned long>(shift));
  mpz_class q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), d.get_mpz_t());
  // Append a sticky digit so ties are decided correctly.
  q = q * 10 + (r != 0 ? 1 : 0);
  return {q, -shift - 1};
}

[[noreturn]] void mismatch(const Scalar& a, const Scalar& b) {
  throw Error(Errc::backend_mismatch,
              "backend mismatch: " + to_string(a.backend()) + " vs " + to_string(b.backend()));
}

template <class Op>
Scalar binary_op(const Scalar& a, const Scalar& b, Op op) {
  const auto& va = a.value();
  const auto& vb = b.value();
  if (va.index() != vb.index()) mismatch(a, b);
  switch (va.index()) {
    case 0:
      return Scalar(op(std::get<double>(va), std::get<double>(vb)));
    case 1:
      return Scalar(mpq_class(op(std::get<mpq_class>(va), std::get<mpq_class>(vb))));
    default: {
      const auto& da = std::get<Decimal>(va);
      const auto& db = std::get<Decimal>(vb);
      if (da.precision() != db.precision()) mismatch(a, b);
      return Scalar(op(da, db));
    }
  }
}

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

[[noreturn]] void malformed(std::string_view text) {
  throw Error(Errc::parse_error, "malformed number: '" + std::string(text) + "'");
}

// Exact decimal literal: [+-]digits[.digits][(e|E)[+-]digits].
std::pair<mpz_class, long> parse_decimal_literal(std::string_view text) {
  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_text = s.substr(e + 1);
    s = s.substr(0, e);
    bool exp_negative = false;
    if (!exp_text.empty() && (exp_text.front() == '+' || exp_text.front() == '-')) {
      exp_negative = exp_text.front() == '-';
      exp_text.remove_prefix(1);
    }
    if (!all_digits(exp_text) || exp_text.size() > 9) malformed(text);
    exponent = std::stol(std::string(exp_text));
    if (exp_negative) exponent = -exponent;
  }
  std::string digits;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view whole = s.substr(0, dot);
    std::string_view frac = s.substr(dot + 1);
    if (whole.empty() && frac.empty()) malformed(text);
    if ((!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac))) malformed(text);
    digits = std::string(whole) + std::string(frac);
    exponent -= static_cast<long>(frac.size());
  } else {
    if (!all_digits(s)) malformed(text);
    digits = std::string(s);
  }
  mpz_class coeff(digits, 10);
  if (negative) coeff = -coeff;
  return {coeff, exponent};
}

mpq_class decimal_literal_to_rational(const mpz_class& coeff, long exponent) {
  if (exponent >= 0) return mpq_class(coeff * pow10(static_cast<unsigned long>(exponent)));
  mpq_class q(coeff, pow10(static_cast<unsigned long>(-exponent)));
  q.canonicalize();
  return q;
}

}  // namespace

// ---------------------------------------------------------------------------
// BackendSpec

BackendSpec BackendSpec::decimal(int digits) {
  if (digits < min_decimal_digits)
    throw Error(Errc::invalid_argument,
                "decimal precision must be at least " + std::to_string(min_decimal_digits) + " digits");
  return {BackendKind::decimal, digits};
}

std::string to_string(const BackendSpec& spec) {
  switch (spec.kind) {
    case BackendKind::binary64:
      return "binary64";
    case BackendKind::rational:
      return "rational";
    case BackendKind::decimal:
      return "decimal:" + std::to_string(spec.precision_digits);
  }
  return "?";
}

BackendSpec parse_backend(std::string_view name, int default_digits) {
  if (name == "binary64" || name == "double") return BackendSpec::binary64();
  if (name == "rational") return BackendSpec::rational();
  if (name == "decimal") return BackendSpec::decimal(default_digits);
  if (name.starts_with("decimal:")) {
    std::string_view digits = name.substr(8);
    int p = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), p);
    if (ec != std::errc() || ptr != digits.data() + digits.size())
      throw Error(Errc::parse_error, "bad decimal precision in '" + std::string(name) + "'");
    return BackendSpec::decimal(p);
  }
  throw Error(Errc::parse_error, "unknown backend '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------
// Decimal

Decimal::Decimal(mpz_class coefficient, long exponent, int precision)
    : coeff_(std::move(coefficient)), exp_(exponent), precision_(precision) {
  if (precision_ < 1) throw Error(Errc::invalid_argument, "decimal precision must be positive");
  round_to_precision();
}

void Decimal::round_to_precision() {
  if (coeff_ == 0) {
    exp_ = 0;
    return;
  }
  long digits = digit_count(coeff_);
  if (digits <= precision_) return;
  auto drop = static_cast<unsigned long>(digits - precision_);
  bool negative = coeff_ < 0;
  mpz_class q = round_half_even_digits(abs(coeff_), drop, false);
  long e = exp_ + static_cast<long>(drop);
  if (digit_count(q) > precision_) {  // carry out of the top digit, e.g. 999 -> 1000
    q /= 10;
    ++e;
  }
  coeff_ = negative ? mpz_class(-q) : q;
  exp_ = e;
}

Decimal Decimal::from_rational(const mpq_class& q, int precision) {
  if (q == 0) return Decimal(0, 0, precision);
  mpz_class n = abs(q.get_num());
  auto [coeff, e] = divide_rounded(n, q.get_den(), precision);
  if (q < 0) coeff = -coeff;
  return Decimal(coeff, e, precision);
}

Decimal Decimal::from_double(double x, int precision) {
  if (!std::isfinite(x)) throw Error(Errc::out_of_domain, "non-finite value");
  return from_rational(mpq_class(x), precision);
}

mpq_class Decimal::to_rational() const { return decimal_literal_to_rational(coeff_, exp_); }

std::string Decimal::to_fixed(int fractional_digits) const {
  mpz_class scaled;
  long shift = exp_ + fractional_digits;
  if (shift >= 0) {
    scaled = abs(coeff_) * pow10(static_cast<unsigned long>(shift));
  } else {
    scaled = round_half_even_digits(abs(coeff_), static_cast<unsigned long>(-shift), false);
  }
  std::string digits = scaled.get_str();
  if (static_cast<long>(digits.size()) <= fractional_digits)
    digits.insert(0, static_cast<std::size_t>(fractional_digits) + 1 - digits.size(), '0');
  std::string out;
  if (coeff_ < 0 && scaled != 0) out.push_back('-');
  out += digits.substr(0, digits.size() - static_cast<std::size_t>(fractional_digits));
  if (fractional_digits > 0) {
    out.push_back('.');
    out += digits.substr(digits.size() - static_cast<std::size_t>(fractional_digits));
  }
  return out;
}

Decimal operator+(const Decimal& a, const Decimal& b) {
  if (a.coeff_ == 0) return Decimal(b.coeff_, b.exp_, a.precision_);
  if (b.coeff_ == 0) return Decimal(a.coeff_, a.exp_, a.precision_);
  const int p = a.precision_;
  long top_a = a.exp_ + digit_count(a.coeff_);
  long top_b = b.exp_ + digit_count(b.coeff_);
  // An operand lying entirely below half an ulp of the other cannot change
  // the rounded sum; skip the (possibly huge) alignment.
  if (top_b < top_a - p - 3) return Decimal(a.coeff_, a.exp_, p);
  if (top_a < top_b - p - 3) return Decimal(b.coeff_, b.exp_, p);
  long e = std::min(a.exp_, b.exp_);
  mpz_class sum = a.coeff_ * pow10(static_cast<unsigned long>(a.exp_ - e)) +
                  b.coeff_ * pow10(static_cast<unsigned long>(b.exp_ - e));
  return Decimal(sum, e, p);
}

Decimal operator-(const Decimal& a) { return Decimal(-a.coeff_, a.exp_, a.precision_); }

Decimal operator-(const Decimal& a, const Decimal& b) { return a + (-b); }

Decimal operator*(const Decimal& a, const Decimal& b) {
  return Decimal(a.coeff_ * b.coeff_, a.exp_ + b.exp_, a.precision_);
}

Decimal operator/(const Decimal& a, const Decimal& b) {
  if (b.coeff_ == 0) throw Error(Errc::out_of_domain, "division by zero");
  if (a.coeff_ == 0) return Decimal(0, 0, a.precision_);
  auto [coeff, e] = divide_rounded(abs(a.coeff_), abs(b.coeff_), a.precision_);
  if ((a.coeff_ < 0) != (b.coeff_ < 0)) coeff = -coeff;
  return Decimal(coeff, e + a.exp_ - b.exp_, a.precision_);
}

std::strong_ordering operator<=>(const Decimal& a, const Decimal& b) {
  int sa = sgn(a.coeff_);
  int sb = sgn(b.coeff_);
  if (sa != sb) return sa <=> sb;
  if (sa == 0) return std::strong_ordering::equal;
  long e = std::min(a.exp_, b.exp_);
  mpz_class ca = a.coeff_ * pow10(static_cast<unsigned long>(a.exp_ - e));
  mpz_class cb = b.coeff_ * pow10(static_cast<unsigned long>(b.exp_ - e));
  return cmp(ca, cb) <=> 0;
}

// ---------------------------------------------------------------------------
// Scalar

Scalar::Scalar(double x) : v_(x) {
  if (!std::isfinite(x)) throw Error(Errc::out_of_domain, "non-finite binary64 value");
}

Scalar::Scalar(mpq_class q) : v_(std::move(q)) { std::get<mpq_class>(v_).canonicalize(); }

Scalar Scalar::from_int(long n, const BackendSpec& backend) {
  switch (backend.kind) {
    case BackendKind::binary64:
      return Scalar(static_cast<double>(n));
    case BackendKind::rational:
      return Scalar(mpq_class(n));
    case BackendKind::decimal:
      return Scalar(Decimal(n, 0, backend.precision_digits));
  }
  return {};
}

Scalar Scalar::from_ratio(long p, long q, const BackendSpec& backend) {
  if (q == 0) throw Error(Errc::out_of_domain, "zero denominator");
  mpq_class r(p, q);
  r.canonicalize();
  return from_rational(r, backend);
}

Scalar Scalar::from_rational(const mpq_class& q, const BackendSpec& backend) {
  switch (backend.kind) {
    case BackendKind::binary64:
      return Scalar(nearest_double(q));
    case BackendKind::rational:
      return Scalar(q);
    case BackendKind::decimal:
      return Scalar(Decimal::from_rational(q, backend.precision_digits));
  }
  return {};
}

BackendSpec Scalar::backend() const {
  switch (v_.index()) {
    case 0:
      return BackendSpec::binary64();
    case 1:
      return BackendSpec::rational();
    default:
      return {BackendKind::decimal, std::get<Decimal>(v_).precision()};
  }
}

double Scalar::to_double() const {
  if (const double* d = std::get_if<double>(&v_)) return *d;
  return nearest_double(to_rational());
}

mpq_class Scalar::to_rational() const {
  switch (v_.index()) {
    case 0:
      return mpq_class(std::get<double>(v_));
    case 1:
      return std::get<mpq_class>(v_);
    default:
      return std::get<Decimal>(v_).to_rational();
  }
}

Scalar Scalar::convert(const BackendSpec& target) const {
  if (backend() == target) return *this;
  return from_rational(to_rational(), target);
}

std::string Scalar::to_string() const {
  switch (v_.index()) {
    case 0: {
      char buf[64];
      auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, std::get<double>(v_));
      return std::string(buf, ptr);
    }
    case 1: {
      const auto& q = std::get<mpq_class>(v_);
      return q.get_num().get_str() + "/" + q.get_den().get_str();
    }
    default: {
      const auto& d = std::get<Decimal>(v_);
      return d.to_fixed(d.precision());
    }
  }
}

bool Scalar::is_zero() const {
  switch (v_.index()) {
    case 0:
      return std::get<double>(v_) == 0.0;
    case 1:
      return std::get<mpq_class>(v_) == 0;
    default:
      return std::get<Decimal>(v_).sign() == 0;
  }
}

Scalar Scalar::abs() const {
  switch (v_.index()) {
    case 0:
      return Scalar(std::fabs(std::get<double>(v_)));
    case 1:
      return Scalar(mpq_class(::abs(std::get<mpq_class>(v_))));
    default: {
      const auto& d = std::get<Decimal>(v_);
      return d.sign() < 0 ? Scalar(-d) : *this;
    }
  }
}

Scalar operator+(const Scalar& a, const Scalar& b) {
  return binary_op(a, b, [](const auto& x, const auto& y) { return x + y; });
}

Scalar operator-(const Scalar& a, const Scalar& b) {
  return binary_op(a, b, [](const auto& x, const auto& y) { return x - y; });
}

Scalar operator*(const Scalar& a, const Scalar& b) {
  return binary_op(a, b, [](const auto& x, const auto& y) { return x * y; });
}

Scalar operator/(const Scalar& a, const Scalar& b) {
  if (b.is_zero()) throw Error(Errc::out_of_domain, "division by zero");
  return binary_op(a, b, [](const auto& x, const auto& y) { return x / y; });
}

Scalar operator-(const Scalar& a) {
  return std::visit([](const auto& x) { return Scalar(std::decay_t<decltype(x)>(-x)); }, a.v_);
}

std::strong_ordering operator<=>(const Scalar& a, const Scalar& b) {
  if (a.v_.index() == b.v_.index()) {
    switch (a.v_.index()) {
      case 0: {
        double x = std::get<double>(a.v_);
        double y = std::get<double>(b.v_);
        return x < y ? std::strong_ordering::less
                     : (x > y ? std::strong_ordering::greater : std::strong_ordering::equal);
      }
      case 1:
        return cmp(std::get<mpq_class>(a.v_), std::get<mpq_class>(b.v_)) <=> 0;
      default:
        return std::get<Decimal>(a.v_) <=> std::get<Decimal>(b.v_);
    }
  }
  return cmp(a.to_rational(), b.to_rational()) <=> 0;
}

// ---------------------------------------------------------------------------
// Free functions

Scalar parse_scalar(std::string_view text, const BackendSpec& backend) {
  if (text.empty()) malformed(text);
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    std::string_view num = text.substr(0, slash);
    std::string_view den = text.substr(slash + 1);
    std::string_view num_digits = num;
    if (!num_digits.empty() && (num_digits.front() == '-' || num_digits.front() == '+'))
      num_digits.remove_prefix(1);
    if (!all_digits(num_digits) || !all_digits(den)) malformed(text);
    mpz_class p(std::string(num_digits), 10);
    if (num.front() == '-') p = -p;
    mpz_class q(std::string(den), 10);
    if (q == 0) throw Error(Errc::parse_error, "zero denominator in '" + std::string(text) + "'");
    mpq_class r(p, q);
    r.canonicalize();
    return Scalar::from_rational(r, backend);
  }
  auto [coeff, exponent] = parse_decimal_literal(text);
  switch (backend.kind) {
    case BackendKind::binary64: {
      // from_chars is correctly rounded but rejects a leading '+'.
      std::string_view s = text.front() == '+' ? text.substr(1) : text;
      double x = 0;
      auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
      if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(x))
        throw Error(Errc::parse_error, "value out of binary64 range: '" + std::string(text) + "'");
      return Scalar(x);
    }
    case BackendKind::rational:
      return Scalar(decimal_literal_to_rational(coeff, exponent));
    case BackendKind::decimal:
      return Scalar(Decimal(coeff, exponent, backend.precision_digits));
  }
  return {};
}

Scalar affine(const Scalar& a, const Scalar& x, const Scalar& b) {
  if (a.backend() != x.backend() || a.backend() != b.backend())
    throw Error(Errc::backend_mismatch, "affine: arguments use different backends");
  return a * x + b;
}

Branch cmp_half(const Scalar& x) {
  switch (x.value().index()) {
    case 0: {
      double v = std::get<double>(x.value());
      if (v < 0.0 || v > 1.0) throw Error(Errc::out_of_domain, "cmp_half: value outside [0,1]");
      return v <= 0.5 ? Branch::left : Branch::right;
    }
    case 1: {
      const auto& q = std::get<mpq_class>(x.value());
      if (q < 0 || q > 1) throw Error(Errc::out_of_domain, "cmp_half: value outside [0,1]");
      // q <= 1/2  <=>  2p <= q.den
      return 2 * q.get_num() <= q.get_den() ? Branch::left : Branch::right;
    }
    default: {
      const auto& d = std::get<Decimal>(x.value());
      const Decimal zero(0, 0, d.precision());
      const Decimal one(1, 0, d.precision());
      if (d < zero || d > one) throw Error(Errc::out_of_domain, "cmp_half: value outside [0,1]");
      return d <= Decimal(5, -1, d.precision()) ? Branch::left : Branch::right;
    }
  }
}

double distance(const Scalar& a, const Scalar& b) {
  if (a.value().index() == 0 && b.value().index() == 0)
    return std::fabs(std::get<double>(a.value()) - std::get<double>(b.value()));
  return nearest_double(mpq_class(abs(a.to_rational() - b.to_rational())));
}

double nearest_double(const mpq_class& q) {
  if (q == 0) return 0.0;
  mpz_class n = abs(q.get_num());
  mpz_class d = q.get_den();
  // Scale so the integer quotient carries 55-56 bits.
  long k = 55 - (bit_length(n) - bit_length(d));
  if (k > 0)
    n <<= static_cast<mp_bitcnt_t>(k);
  else if (k < 0)
    d <<= static_cast<mp_bitcnt_t>(-k);
  mpz_class quo, rem;
  mpz_fdiv_qr(quo.get_mpz_t(), rem.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
  long excess = bit_length(quo) - 53;
  mpz_class mant = quo >> static_cast<mp_bitcnt_t>(excess);
  mpz_class dropped = quo - (mant << static_cast<mp_bitcnt_t>(excess));
  mpz_class half = mpz_class(1) << static_cast<mp_bitcnt_t>(excess - 1);
  int c = cmp(dropped, half);
  if (c > 0 || (c == 0 && rem != 0) || (c == 0 && mpz_odd_p(mant.get_mpz_t()))) ++mant;
  // The mantissa has at most 54 bits here, so get_d is exact; ldexp handles
  // range (subnormal results round a second time, which is irrelevant for
  // the magnitudes this library deals in).
  double r = std::ldexp(mant.get_d(), static_cast<int>(excess - k));
  if (!std::isfinite(r)) throw Error(Errc::out_of_domain, "value out of binary64 range");
  return q < 0 ? -r : r;
}

mpz_class isqrt(const mpz_class& n) {
  if (n < 0) throw Error(Errc::out_of_domain, "isqrt of a negative number");
  mpz_class r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

}  // namespace tentlab
