#include "hyplim/sequence.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hyplim {

CauchyTest cauchy_test(const std::vector<double>& d, double floor, double tol, double ratio) {
  CauchyTest r;
  r.differences = d;
  if (d.size() < 2) return r;
  r.last_difference = d.back();
  const std::size_t tail = std::max<std::size_t>(2, d.size() / 2);
  bool ok = true;
  for (std::size_t i = d.size() - tail; i + 1 < d.size(); ++i) {
    if (d[i + 1] <= floor) continue;
    const double q = d[i] > 0 ? d[i + 1] / d[i] : INFINITY;
    r.worst_ratio = std::max(r.worst_ratio, q);
    if (q > ratio) ok = false;
  }
  r.converges = ok && d.back() <= std::max(tol, floor);
  return r;
}

Eigen::VectorXd richardson_weights(const std::vector<double>& n, const std::vector<double>& exponents) {
  const std::size_t q = std::min(exponents.size(), n.size() - 1);
  const std::size_t m = q + 1;
  if (n.size() < 1) throw std::invalid_argument("richardson_weights: no samples");
  const double nl = n.back();
  Eigen::MatrixXd V(m, m);
  for (std::size_t i = 0; i < m; ++i) {
    const double ni = n[n.size() - m + i];
    V(i, 0) = 1.0;
    for (std::size_t p = 0; p < q; ++p) V(i, p + 1) = std::pow(nl / ni, exponents[p]);
  }
  // L = e_0^T V^{-1} s  =>  w = V^{-T} e_0
  Eigen::VectorXd e = Eigen::VectorXd::Zero(m);
  e(0) = 1.0;
  const Eigen::VectorXd wl = V.transpose().fullPivLu().solve(e);
  Eigen::VectorXd w = Eigen::VectorXd::Zero(n.size());
  w.tail(m) = wl;
  return w;
}

Extrapolation extrapolate(const std::vector<double>& n, const std::vector<Eigen::MatrixXd>& values,
                          const std::vector<double>& exponents) {
  if (n.size() != values.size() || n.empty()) throw std::invalid_argument("extrapolate: size mismatch");
  auto combine = [&](const Eigen::VectorXd& w) {
    Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(values[0].rows(), values[0].cols());
    for (std::size_t i = 0; i < n.size(); ++i)
      if (w(i) != 0.0) acc += w(i) * values[i];
    return acc;
  };
  Extrapolation r;
  const std::size_t q = std::min(exponents.size(), n.size() - 1);
  r.value = combine(richardson_weights(n, std::vector<double>(exponents.begin(), exponents.begin() + q)));
  const Eigen::MatrixXd lower =
      q > 0 ? combine(richardson_weights(n, std::vector<double>(exponents.begin(), exponents.begin() + q - 1)))
            : values.back();
  r.error = (r.value - lower).cwiseAbs().maxCoeff();
  return r;
}

double extrapolate_scalar(const std::vector<double>& n, const std::vector<double>& values,
                          const std::vector<double>& exponents, double* error) {
  std::vector<Eigen::MatrixXd> m;
  for (double v : values) m.push_back(Eigen::MatrixXd::Constant(1, 1, v));
  const auto e = extrapolate(n, m, exponents);
  if (error) *error = e.error;
  return e.value(0, 0);
}

}  // namespace hyplim
