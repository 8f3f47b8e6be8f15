#include "hyplim/rational.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace hyplim {

namespace {

long long mul(long long a, long long b) {
  long long r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("rational overflow");
  return r;
}

long long add(long long a, long long b) {
  long long r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("rational overflow");
  return r;
}

}  // namespace

Rational::Rational(long long n, long long d) {
  if (d == 0) throw std::invalid_argument("rational with zero denominator");
  if (d < 0) {
    n = mul(n, -1);
    d = mul(d, -1);
  }
  const long long g = std::gcd(n, d);
  num_ = n / g;
  den_ = d / g;
}

Rational Rational::parse(const std::string& s) {
  const auto slash = s.find('/');
  std::size_t used = 0;
  try {
    if (slash == std::string::npos) {
      const long long n = std::stoll(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return Rational(n);
    }
    const std::string a = s.substr(0, slash), b = s.substr(slash + 1);
    const long long n = std::stoll(a, &used);
    if (used != a.size()) throw std::invalid_argument(s);
    const long long d = std::stoll(b, &used);
    if (used != b.size()) throw std::invalid_argument(s);
    return Rational(n, d);
  } catch (const std::logic_error&) {
    throw std::invalid_argument("malformed rational '" + s + "'");
  }
}

Rational Rational::from_double(double x, long long max_den, double tol) {
  if (!std::isfinite(x)) throw std::invalid_argument("rational structure required");
  long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double r = x;
  for (int it = 0; it < 64; ++it) {
    const double a = std::floor(r);
    if (std::abs(a) > 9e15) break;
    const long long ai = static_cast<long long>(a);
    const long long p2 = add(mul(ai, p1), p0), q2 = add(mul(ai, q1), q0);
    if (q2 > max_den) break;
    p0 = p1, q0 = q1, p1 = p2, q1 = q2;
    if (std::abs(static_cast<double>(p1) / static_cast<double>(q1) - x) <= tol * (1.0 + std::abs(x))) return Rational(p1, q1);
    const double f = r - a;
    if (f == 0.0) break;
    r = 1.0 / f;
  }
  throw std::invalid_argument("rational structure required");
}

std::string Rational::str() const {
  return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::operator+(const Rational& o) const {
  const long long g = std::gcd(den_, o.den_);
  return Rational(add(mul(num_, o.den_ / g), mul(o.num_, den_ / g)), mul(den_ / g, o.den_));
}
Rational Rational::operator-(const Rational& o) const { return *this + (-o); }
Rational Rational::operator*(const Rational& o) const {
  const long long g1 = std::gcd(num_, o.den_), g2 = std::gcd(o.num_, den_);
  return Rational(mul(num_ / g1, o.num_ / g2), mul(den_ / g2, o.den_ / g1));
}
Rational Rational::operator/(const Rational& o) const {
  if (o.num_ == 0) throw std::domain_error("division by zero rational");
  return *this * Rational(o.den_, o.num_);
}
bool Rational::operator<(const Rational& o) const {
  return static_cast<__int128>(num_) * o.den_ < static_cast<__int128>(o.num_) * den_;
}

long long checked_lcm(long long a, long long b) { return mul(a / std::gcd(a, b), b); }

double exact_fraction(Exponent m, Exponent num, Exponent den) {
  if (den <= 0) throw std::invalid_argument("exact_fraction: denominator must be positive");
  using U = unsigned __int128;
  if (den > (static_cast<Exponent>(1) << 125)) throw std::overflow_error("exact_fraction: denominator too large");
  const U d = static_cast<U>(den);
  auto mod = [&](Exponent v) {
    Exponent r = v % den;
    return static_cast<U>(r < 0 ? r + den : r);
  };
  U a = mod(m), b = mod(num), r = 0;
  while (b) {
    if (b & 1) r = (r + a) % d;
    a = (a + a) % d;
    b >>= 1;
  }
  Exponent c = static_cast<Exponent>(r);
  if (2 * c > den) c -= den;
  return static_cast<double>(static_cast<long double>(c) / static_cast<long double>(den));
}

}  // namespace hyplim
