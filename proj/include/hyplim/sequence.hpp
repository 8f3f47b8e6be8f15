#pragma once

#include <vector>

#include <Eigen/Dense>

namespace hyplim {

// Cauchy test on a sampled sequence: the tail of successive differences must
// contract by at least `ratio` per step (or sit below the rounding floor), and
// the last difference must be at most `tol`.
struct CauchyTest {
  bool converges = false;
  std::vector<double> differences;
  double last_difference = 0.0;
  double worst_ratio = 0.0;
};

CauchyTest cauchy_test(const std::vector<double>& differences, double floor, double tol, double ratio = 0.8);

// Weights w with sum_i w_i s(n_i) = L for s(n) = L + sum_p a_p n^{-p}, using the last
// exponents.size()+1 samples.
Eigen::VectorXd richardson_weights(const std::vector<double>& n, const std::vector<double>& exponents);

struct Extrapolation {
  Eigen::MatrixXd value;
  double error = 0.0;  // distance to the next-lower order estimate
};

// Entrywise extrapolation of a matrix sequence (complex entries as stacked re/im).
Extrapolation extrapolate(const std::vector<double>& n, const std::vector<Eigen::MatrixXd>& values,
                          const std::vector<double>& exponents);

double extrapolate_scalar(const std::vector<double>& n, const std::vector<double>& values,
                          const std::vector<double>& exponents, double* error = nullptr);

}  // namespace hyplim
