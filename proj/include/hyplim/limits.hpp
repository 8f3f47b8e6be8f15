#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hyplim/geomdata.hpp"
#include "hyplim/isometry.hpp"

namespace hyplim {

struct Schedule {
  std::function<Exponent(long long)> exponent_at;
  std::string description;

  // coefficient * n^r
  static Schedule power(int r, Exponent coefficient = 1);
  static Schedule constant(Exponent m);
  // round(p * n^a / q) * n^b
  static Schedule rounded(Exponent p, Exponent q, int a, int b = 0);
};

// n -> geometric data of rho_n(1). Admissible n are the multiples of n_step that are >= n_min.
template <typename Data>
struct FamilySpec {
  using Scalar = ScalarOf<Data>;
  int k = 0;
  std::function<Data(long long)> data_at;
  std::string description;
  long long n_min = 1;
  long long n_step = 1;
  std::vector<Schedule> schedules;
  // Exponents p of the n^{-p} error terms used for extrapolation.
  std::vector<double> rate_exponents{1.0, 2.0, 3.0};
  // Optional exact data of rho_n(m); otherwise power_data(data_at(n), m).
  std::function<Data(long long, Exponent)> power_at;

  Data data_power(long long n, Exponent m) const { return power_at ? power_at(n, m) : power_data(data_at(n), m); }

  static constexpr FieldTag field() { return FieldTraits<Scalar>::tag; }
};

using RealFamily = FamilySpec<GeomDataReal>;
using ComplexFamily = FamilySpec<GeomDataComplex>;

// The family n -> data of rho_n(m_n).
template <typename Data>
FamilySpec<Data> power_family(const FamilySpec<Data>& f, const Schedule& s) {
  FamilySpec<Data> p = f;
  auto ex = s.exponent_at;
  p.data_at = [f, ex](long long n) { return f.data_power(n, ex(n)); };
  p.power_at = [f, ex](long long n, Exponent m) { return f.data_power(n, checked_mul(ex(n), m)); };
  p.description = f.description + " at " + s.description;
  p.schedules.clear();
  return p;
}

// n values: 2^lo .. 2^hi, moved up to the admissible progression of the family.
std::vector<long long> default_probes(int lo = 4, int hi = 16, long long step = 1);

template <typename Scalar>
struct UnipotentLimit {
  Vec<Scalar> v;
  Scalar s{};  // real case: |v|^2/2

  static UnipotentLimit from_vector(const Vec<Scalar>& v);
  static UnipotentLimit from_matrix(const Mat<Scalar>& M);
  GroupElement<Scalar> element() const;
  // (v) in the real case, (Re v, Im v, Im s) in the complex case.
  Eigen::VectorXd coordinates() const;
};

template <typename Scalar>
struct ConvergenceReport {
  bool converges = false;
  UnipotentLimit<Scalar> limit;
  std::optional<Mat<Scalar>> limit_matrix;  // set in the mixed bounded/unbounded regime
  std::string reason;
  int offending_index = 0;  // 1-based condition/coordinate index on divergence
  std::vector<double> residuals;
  double extrapolation_error = 0.0;
  double re_s_consistency = 0.0;  // |Re s - |v|^2/2| (complex)
};

ConvergenceReport<double> check_convergence_real(const RealFamily& f, const std::vector<long long>& n_probe);
ConvergenceReport<Complex> check_convergence_complex(const ComplexFamily& f, const std::vector<long long>& n_probe);

template <typename Scalar>
struct NumericLimit {
  bool converged = false;
  Mat<Scalar> limit;         // last matrix of the sequence
  Mat<Scalar> extrapolated;  // Richardson estimate
  std::vector<double> residuals;
  double extrapolation_error = 0.0;
  double worst_ratio = 0.0;
};

template <typename Data>
NumericLimit<ScalarOf<Data>> numeric_limit(const FamilySpec<Data>& f, const Schedule& s,
                                           const std::vector<long long>& n_values, double tol = 1e-3);

template <typename Scalar>
struct StrongConvergence {
  bool strong = false;
  BoundaryPoint<Scalar> attracting_limit;
  BoundaryPoint<Scalar> repelling_limit;
  double separation = 0.0;
};

template <typename Data>
StrongConvergence<ScalarOf<Data>> strong_convergence_check(const FamilySpec<Data>& f, const std::vector<long long>& n_probe,
                                                           double tol_sep = 1e-6);

template <typename Scalar>
struct LimitGroup {
  std::vector<UnipotentLimit<Scalar>> generators;
  std::vector<GroupElement<Scalar>> torus;
  std::vector<std::string> sources;
  int detected_rank = 0;
  bool discrete_certificate = false;
  double shortest_vector = 0.0;

  Eigen::MatrixXd coordinate_matrix() const;
};

template <typename Data>
LimitGroup<ScalarOf<Data>> harvest_limit_group(const FamilySpec<Data>& f, const std::vector<Schedule>& schedules,
                                               const std::vector<long long>& n_values);

struct RankBound {
  int bound = 0;
  int torus_dim = 0;
  int vector_dim = 0;
};

RankBound rank_bound_real(const RealFamily& f, const std::vector<long long>& n_probe);

}  // namespace hyplim
