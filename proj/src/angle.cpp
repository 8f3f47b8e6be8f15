#include "hyplim/angle.hpp"

#include <cmath>

namespace hyplim {

double Angle::reduce(double t) {
  if (!std::isfinite(t)) throw std::invalid_argument("non-finite angle");
  double r = t - std::round(t);
  if (r <= -0.5) r += 1.0;
  return r;
}

Angle Angle::times(Exponent m) const {
  bool neg = m < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(m + 1)) + 1 : static_cast<unsigned __int128>(m);
  // m = sum c_i 2^{32 i}; each c_i * (t 2^{32 i}) is split into p + e exactly.
  double acc = 0.0;
  for (int i = 0; i < 4 && u != 0; ++i) {
    double c = static_cast<double>(static_cast<std::uint64_t>(u & 0xffffffffULL));
    u >>= 32;
    if (c == 0.0) continue;
    double s = std::ldexp(turns_, 32 * i);
    double p = c * s;
    double e = std::fma(c, s, -p);
    acc = reduce(acc + reduce(p));
    acc = reduce(acc + reduce(e));
  }
  return Angle(neg ? reduce(-acc) : acc);
}

}  // namespace hyplim
