#pragma once

#include <vector>

#include <Eigen/Dense>

namespace hyplim {

// Rank of the span of the columns of G by column echelon with a relative pivot threshold.
int numeric_rank(const Eigen::MatrixXd& G, double threshold = 1e-6);

// Shortest nonzero vector G c over integer c with |c_i| <= bound; the bound is
// lowered when (2 bound + 1)^cols exceeds `budget`.
struct ShortestVector {
  double norm = 0.0;
  Eigen::VectorXi coefficients;
  int bound_used = 0;
};
ShortestVector shortest_vector(const Eigen::MatrixXd& G, int bound = 8, long long budget = 2000000);

struct IntegerFit {
  Eigen::VectorXd real_coefficients;
  Eigen::VectorXi coefficients;
  double residual = 0.0;
};
// Least-squares coefficients of target in the column span of G, rounded to integers.
IntegerFit integer_fit(const Eigen::MatrixXd& G, const Eigen::VectorXd& target);

// Max residual of fitting every column of A as an integer combination of the columns of B.
double lattice_containment_residual(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B);

}  // namespace hyplim
