#pragma once

#include <doctest.h>

#include <random>

#include "hyplim/geomdata.hpp"

namespace testing {

template <typename Scalar>
double max_diff(const hyplim::Mat<Scalar>& a, const hyplim::Mat<Scalar>& b) {
  REQUIRE(a.rows() == b.rows());
  REQUIRE(a.cols() == b.cols());
  return (a - b).cwiseAbs().maxCoeff();
}

inline Eigen::MatrixXd rows_real(std::initializer_list<std::initializer_list<double>> r) {
  Eigen::MatrixXd M(static_cast<Eigen::Index>(r.size()), static_cast<Eigen::Index>(r.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& row : r) {
    Eigen::Index j = 0;
    for (double x : row) M(i, j++) = x;
    ++i;
  }
  return M;
}

inline hyplim::GeomDataReal random_real(std::mt19937_64& g, int k) {
  std::uniform_real_distribution<double> x(-2.0, 2.0), y(0.05, 1.5), t(-0.5, 0.5);
  hyplim::GeomDataReal d;
  d.x.resize(k);
  for (int i = 0; i < k; ++i) d.x(i) = x(g);
  d.y = y(g);
  for (int j = 0; j < k / 2; ++j) d.theta.push_back(hyplim::Angle::from_turns(t(g)));
  return d;
}

inline hyplim::GeomDataComplex random_complex(std::mt19937_64& g, int k) {
  std::uniform_real_distribution<double> x(-2.0, 2.0), y(0.05, 1.5), t(-0.5, 0.5);
  Eigen::VectorXcd xs(k);
  for (int i = 0; i < k; ++i) xs(i) = hyplim::Complex(x(g), x(g));
  std::vector<hyplim::Angle> th;
  for (int j = 0; j < k; ++j) th.push_back(hyplim::Angle::from_turns(t(g)));
  const double tt = x(g), yy = y(g);
  return hyplim::GeomDataComplex::make(xs, tt, yy, th);
}

// Canonical real data: odd coordinates zero, even coordinates sorted and nonnegative.
inline hyplim::GeomDataReal random_canonical_real(std::mt19937_64& g, int k) {
  hyplim::GeomDataReal d = random_real(g, k);
  std::vector<double> e;
  for (int j = 0; j < k / 2; ++j) e.push_back(std::abs(d.x(2 * j + 1)) + 0.1);
  std::sort(e.begin(), e.end());
  d.x.setZero();
  for (int j = 0; j < k / 2; ++j) d.x(2 * j + 1) = e[j];
  return d;
}

}  // namespace testing
