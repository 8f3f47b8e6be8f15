#pragma once

#include "hyplim/types.hpp"

namespace hyplim {

// An angle stored as a fraction of a full turn, kept in (-1/2, 1/2].
// Multiplication by huge integers is done exactly enough that m * (2*pi/n^j)
// for m up to 2^64 still reduces correctly.
class Angle {
 public:
  constexpr Angle() = default;

  static Angle from_turns(double t) { return Angle(reduce(t)); }
  static Angle from_radians(double r) { return Angle(reduce(r / kTwoPi)); }

  double turns() const { return turns_; }
  double radians() const { return turns_ * kTwoPi; }
  // Value in [0, 2*pi).
  double radians_positive() const { return (turns_ < 0 ? turns_ + 1.0 : turns_) * kTwoPi; }

  Angle operator+(Angle o) const { return Angle(reduce(turns_ + o.turns_)); }
  Angle operator-(Angle o) const { return Angle(reduce(turns_ - o.turns_)); }
  Angle operator-() const { return Angle(reduce(-turns_)); }
  Angle times(Exponent m) const;
  Angle half() const { return Angle(reduce(turns_ / 2.0)); }

  bool operator==(const Angle& o) const { return turns_ == o.turns_; }

  // Nearest representative of t modulo 1 in (-1/2, 1/2].
  static double reduce(double t);

 private:
  explicit constexpr Angle(double t) : turns_(t) {}
  double turns_ = 0.0;
};

}  // namespace hyplim
