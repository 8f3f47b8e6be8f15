#include "hyplim/types.hpp"

#include <algorithm>
#include <limits>

namespace hyplim {

FieldTag parse_field(const std::string& s) {
  if (s == "real" || s == "R") return FieldTag::Real;
  if (s == "complex" || s == "C") return FieldTag::Complex;
  throw std::invalid_argument("unknown field '" + s + "' (expected real|complex)");
}

std::string to_string(Exponent m) {
  if (m == 0) return "0";
  bool neg = m < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(m + 1)) + 1 : static_cast<unsigned __int128>(m);
  std::string out;
  while (u > 0) {
    out.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
    u /= 10;
  }
  if (neg) out.push_back('-');
  std::reverse(out.begin(), out.end());
  return out;
}

Exponent checked_mul(Exponent a, Exponent b) {
  Exponent r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("exponent overflow");
  return r;
}

Exponent checked_pow(Exponent base, int e) {
  if (e < 0) throw std::invalid_argument("negative power");
  Exponent r = 1;
  for (int i = 0; i < e; ++i) r = checked_mul(r, base);
  return r;
}

double to_double(Exponent m) { return static_cast<double>(m); }

}  // namespace hyplim
