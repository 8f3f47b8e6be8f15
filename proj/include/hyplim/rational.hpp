#pragma once

#include <string>

#include "hyplim/types.hpp"

namespace hyplim {

// Exact rational with 64-bit parts; every operation throws on overflow.
class Rational {
 public:
  Rational() = default;
  Rational(long long n) : num_(n), den_(1) {}  // NOLINT(google-explicit-constructor)
  Rational(long long n, long long d);

  // "p", "-p/q"
  static Rational parse(const std::string& s);
  // Continued-fraction reconstruction; throws if no fraction with denominator <= max_den matches within tol.
  static Rational from_double(double x, long long max_den = 1000000, double tol = 1e-9);

  long long num() const { return num_; }
  long long den() const { return den_; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  std::string str() const;

  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;
  Rational operator*(const Rational& o) const;
  Rational operator/(const Rational& o) const;
  Rational operator-() const { return Rational(-num_, den_); }
  bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator<(const Rational& o) const;
  Rational abs() const { return Rational(num_ < 0 ? -num_ : num_, den_); }
  bool is_zero() const { return num_ == 0; }

 private:
  long long num_ = 0;
  long long den_ = 1;
};

long long checked_lcm(long long a, long long b);

// m * num / den modulo 1, centered in (-1/2, 1/2], computed exactly before the final division.
double exact_fraction(Exponent m, Exponent num, Exponent den);

}  // namespace hyplim
