#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <type_traits>

#include <Eigen/Dense>

namespace hyplim {

enum class FieldTag { Real, Complex };

using Complex = std::complex<double>;

template <typename Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
struct FieldTraits;

template <>
struct FieldTraits<double> {
  static constexpr FieldTag tag = FieldTag::Real;
  static constexpr const char* name = "real";
};

template <>
struct FieldTraits<Complex> {
  static constexpr FieldTag tag = FieldTag::Complex;
  static constexpr const char* name = "complex";
};

template <typename Scalar>
constexpr bool is_complex_v = std::is_same_v<Scalar, Complex>;

inline double conj(double x) { return x; }
inline Complex conj(const Complex& z) { return std::conj(z); }

inline std::string field_name(FieldTag f) { return f == FieldTag::Real ? "real" : "complex"; }
FieldTag parse_field(const std::string& s);

// Exponents reach n^{k+1} = 2^64 for the complex families, beyond 64-bit range.
using Exponent = __int128;

std::string to_string(Exponent m);
Exponent checked_mul(Exponent a, Exponent b);
Exponent checked_pow(Exponent base, int e);
double to_double(Exponent m);

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// Raised for numerical contract violations (not well positioned, hypotheses unmet, ...).
class HyplimError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hyplim
