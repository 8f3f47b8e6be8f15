#include "hyplim/lattice.hpp"

#include <cmath>
#include <limits>

namespace hyplim {

int numeric_rank(const Eigen::MatrixXd& G, double threshold) {
  if (G.size() == 0) return 0;
  Eigen::MatrixXd M = G;
  const double scale = std::max(1.0, M.cwiseAbs().maxCoeff());
  int rank = 0;
  std::vector<bool> used(M.rows(), false);
  for (Eigen::Index c = 0; c < M.cols(); ++c) {
    Eigen::Index piv = -1;
    double best = 0.0;
    for (Eigen::Index r = 0; r < M.rows(); ++r)
      if (!used[r] && std::abs(M(r, c)) > best) {
        best = std::abs(M(r, c));
        piv = r;
      }
    if (piv < 0 || best <= threshold * scale) continue;
    used[piv] = true;
    ++rank;
    for (Eigen::Index c2 = c + 1; c2 < M.cols(); ++c2) M.col(c2) -= (M(piv, c2) / M(piv, c)) * M.col(c);
  }
  return rank;
}

ShortestVector shortest_vector(const Eigen::MatrixXd& G, int bound, long long budget) {
  const int g = static_cast<int>(G.cols());
  ShortestVector best;
  best.norm = std::numeric_limits<double>::infinity();
  if (g == 0) return best;
  int b = bound;
  while (b > 1 && std::pow(2.0 * b + 1.0, g) > static_cast<double>(budget)) --b;
  best.bound_used = b;
  Eigen::VectorXi c = Eigen::VectorXi::Constant(g, -b);
  Eigen::VectorXd v = G * c.cast<double>();
  while (true) {
    if (!c.isZero()) {
      const double nv = v.norm();
      if (nv < best.norm) {
        best.norm = nv;
        best.coefficients = c;
      }
    }
    int i = 0;
    while (i < g && c(i) == b) {
      v -= 2.0 * b * G.col(i);
      c(i) = -b;
      ++i;
    }
    if (i == g) break;
    c(i) += 1;
    v += G.col(i);
  }
  return best;
}

IntegerFit integer_fit(const Eigen::MatrixXd& G, const Eigen::VectorXd& target) {
  IntegerFit f;
  f.real_coefficients = G.completeOrthogonalDecomposition().solve(target);
  f.coefficients = f.real_coefficients.array().round().cast<int>();
  f.residual = (G * f.coefficients.cast<double>() - target).norm();
  return f;
}

double lattice_containment_residual(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B) {
  double r = 0.0;
  for (Eigen::Index j = 0; j < A.cols(); ++j) r = std::max(r, integer_fit(B, A.col(j)).residual);
  return r;
}

}  // namespace hyplim
