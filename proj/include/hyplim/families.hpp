#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hyplim/limits.hpp"
#include "hyplim/rational.hpp"

namespace hyplim {

struct ClassicJorgensenElement {
  long long n = 0;
  Eigen::Matrix2cd M;
};

// omega_n = 1/n^2 + i pi/n
Complex jorgensen_omega(long long n);
ClassicJorgensenElement jorgensen_classic(long long n);
// g_n^m = [[e^{m w}, n sinh(m w)], [0, e^{-m w}]]
Eigen::Matrix2cd jorgensen_classic_power(long long n, Exponent m);

RealFamily jorgensen_real_family(int k);
ComplexFamily jorgensen_complex_family(int k);
// Schedules outside the default list: n^k and the literal n^{k+1}.
std::vector<Schedule> jorgensen_complex_extra_schedules(int k);

enum class Counterexample { NonFaithful, NonDiscreteGeometric, NonDiscreteGeometricCorrected };

Counterexample parse_counterexample(const std::string& s);
std::string counterexample_name(Counterexample c);

// Golden-ratio angle 2*pi*(phi - 1).
double default_irrational_angle();
// Denominators of the continued-fraction convergents of alpha (in turns), up to `depth` of them.
// Throws if alpha is (numerically) rational.
std::vector<long long> convergent_denominators(double alpha_turns, int depth = 20);

// NonFaithful families are indexed by the convergent depth r = 1..20 rather than by n.
RealFamily counterexample_family(Counterexample variant, int k, std::optional<double> theta = std::nullopt);

// m >= 1 with m * eps nearest target, target first reduced mod 2 pi toward the sign of eps.
// Meant for small steps eps (radians).
Exponent rotation_exponent(double eps, double target);

// Normal-form lattice in the unipotent radical of SO_0(1, k+1).
//   v_i     = -2 pi sum_{j<=i} b_{i,j} w_{j,j} e_{2j-1}   (b_{i,i} = 1),  i <= min(rank, l)
//   v_{l+1} = -2 pi sum_j b_{l+1,j} w_{j,j} e_{2j-1} - c sum_j w_{j,j} e_{2j}
struct LatticeSpec {
  int k = 0;
  std::vector<Rational> w;               // w_{i,i}
  std::vector<std::vector<Rational>> b;  // b[i] holds b_{i+1,1..i}
  std::optional<Rational> c;             // present iff the rank is l+1

  int rank() const { return static_cast<int>(b.size()); }
  void validate() const;
  Eigen::MatrixXd generators() const;  // k x rank

  // Reads a generator matrix already in normal position, rationalizes it and reduces |b| < 1.
  static LatticeSpec from_generators(int k, const Eigen::MatrixXd& G);
};

struct Realization {
  RealFamily family;
  std::vector<Schedule> schedules;
};

Realization realize_lattice(const LatticeSpec& spec);

}  // namespace hyplim
