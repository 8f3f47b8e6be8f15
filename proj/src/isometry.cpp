#include "hyplim/isometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "hyplim/geomdata.hpp"

namespace hyplim {

std::string IsometryClass::name() const {
  switch (kind) {
    case Kind::Identity: return "identity";
    case Kind::Elliptic: return "elliptic";
    case Kind::Parabolic: return unipotent ? "parabolic (unipotent)" : "parabolic";
    case Kind::Loxodromic: return hyperbolic ? "loxodromic (hyperbolic)" : "loxodromic";
  }
  return "unknown";
}

namespace {

template <typename Scalar>
Eigen::MatrixXcd as_complex(const GroupElement<Scalar>& g) {
  return g.matrix().template cast<Complex>();
}

// Null space of m by SVD, columns for singular values <= thr.
Eigen::MatrixXcd null_space(const Eigen::MatrixXcd& m, double thr) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  int n = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) <= thr) ++n;
  return svd.matrixV().rightCols(n);
}

Eigen::VectorXcd eigenvector(const Eigen::MatrixXcd& M, Complex mu) {
  const Eigen::Index n = M.rows();
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(M - mu * Eigen::MatrixXcd::Identity(n, n), Eigen::ComputeFullV);
  return svd.matrixV().col(n - 1);
}

template <typename Scalar>
Vec<Scalar> to_field(const Eigen::VectorXcd& v) {
  Eigen::Index big;
  v.cwiseAbs().maxCoeff(&big);
  const Eigen::VectorXcd w = v * std::conj(v(big) / std::abs(v(big)));
  if constexpr (is_complex_v<Scalar>) {
    return w;
  } else {
    return w.real();
  }
}

}  // namespace

template <typename Scalar>
std::vector<Complex> spectrum(const GroupElement<Scalar>& g) {
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(as_complex(g), false);
  std::vector<Complex> ev(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  std::stable_sort(ev.begin(), ev.end(), [](Complex a, Complex b) { return std::abs(a) > std::abs(b); });
  return ev;
}

template <typename Scalar>
double spectral_tolerance(const GroupElement<Scalar>& g) {
  const double nm = inf_norm<Scalar>(g.matrix());
  const double eps = std::numeric_limits<double>::epsilon();
  return g.tol() * (1.0 + nm) + 4.0 * std::cbrt(eps * (1.0 + nm * nm));
}

template <typename Scalar>
IsometryClass classify(const GroupElement<Scalar>& g) {
  if (!is_in_group(g)) throw HyplimError("classify: element does not preserve the form");
  const Eigen::MatrixXcd M = as_complex(g);
  const Eigen::Index n = M.rows();
  const double nm = inf_norm<Scalar>(g.matrix());
  IsometryClass c;
  if (inf_norm<Complex>(Eigen::MatrixXcd(M - Eigen::MatrixXcd::Identity(n, n))) <= g.tol()) return c;

  const auto ev = spectrum(g);
  const double tau = spectral_tolerance(g);
  if (std::abs(ev.front()) > 1.0 + tau) {
    c.kind = IsometryClass::Kind::Loxodromic;
    c.hyperbolic = std::all_of(ev.begin(), ev.end(), [&](Complex z) { return std::abs(z.imag()) <= tau && z.real() > 0; });
    return c;
  }

  // Cluster eigenvalues; a cluster whose eigenspace is smaller than the cluster is a Jordan block.
  std::vector<bool> used(ev.size(), false);
  bool diagonalizable = true, positive = false;
  for (size_t i = 0; i < ev.size(); ++i) {
    if (used[i]) continue;
    std::vector<Complex> cl;
    for (size_t j = i; j < ev.size(); ++j)
      if (!used[j] && std::abs(ev[j] - ev[i]) <= tau) {
        used[j] = true;
        cl.push_back(ev[j]);
      }
    Complex mean(0.0);
    for (auto z : cl) mean += z;
    mean /= static_cast<double>(cl.size());
    double spread = 0.0;
    for (auto z : cl) spread = std::max(spread, std::abs(z - mean));
    const double thr = std::max(1e-8 * (1.0 + nm), 10.0 * spread * (1.0 + nm));
    const Eigen::MatrixXcd B = null_space(M - mean * Eigen::MatrixXcd::Identity(n, n), thr);
    if (B.cols() < static_cast<Eigen::Index>(cl.size())) diagonalizable = false;
    if (B.cols() > 0) {
      const Eigen::MatrixXcd H = B.adjoint() * form_matrix<Complex>(static_cast<int>(n) - 2) * B;
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> se(Eigen::MatrixXcd((H + H.adjoint()) / 2.0));
      if (se.eigenvalues().maxCoeff() > 1e-8) positive = true;
    }
  }
  if (diagonalizable && positive) {
    c.kind = IsometryClass::Kind::Elliptic;
  } else {
    c.kind = IsometryClass::Kind::Parabolic;
    c.unipotent = std::all_of(ev.begin(), ev.end(), [&](Complex z) { return std::abs(z - 1.0) <= tau; });
  }
  return c;
}

template <typename Scalar>
FixedPointPair<Scalar> fixed_points(const GroupElement<Scalar>& g) {
  if (classify(g).kind != IsometryClass::Kind::Loxodromic) throw HyplimError("no isolated fixed pair (element is not loxodromic)");
  const Eigen::MatrixXcd M = as_complex(g);
  const auto ev = spectrum(g);
  const Vec<Scalar> vp = to_field<Scalar>(eigenvector(M, ev.front()));
  const Vec<Scalar> vm = to_field<Scalar>(eigenvector(M, ev.back()));
  return {boundary_extract<Scalar>(vp, 1e-6), boundary_extract<Scalar>(vm, 1e-6)};
}

template <typename Scalar>
double translation_length(const GroupElement<Scalar>& g) {
  if (classify(g).kind != IsometryClass::Kind::Loxodromic) return 0.0;
  return std::log(std::abs(spectrum(g).front()));
}

template <typename Scalar>
std::pair<GroupElement<Scalar>, GroupElement<Scalar>> jordan_decompose(const GroupElement<Scalar>& g) {
  const auto wp = well_position(g);
  const int k = g.k();
  const auto u = unipotent_from_vector(repelling_point(wp.data));
  Mat<Scalar> hd = Mat<Scalar>::Identity(k + 2, k + 2);
  hd(0, 0) = Scalar(std::exp(wp.data.y));
  hd(k + 1, k + 1) = Scalar(std::exp(-wp.data.y));
  Mat<Scalar> ed = Mat<Scalar>::Identity(k + 2, k + 2);
  if constexpr (is_complex_v<Scalar>) {
    const Complex ph = std::polar(1.0, wp.data.phase.radians());
    ed(0, 0) = ph;
    ed(k + 1, k + 1) = ph;
    ed.block(1, 1, k, k) = phase_diagonal(wp.data.theta).asDiagonal();
  } else {
    ed.block(1, 1, k, k) = rotation_matrix_real(wp.data.theta, k);
  }
  const auto Ci = wp.conjugator.inverse();
  const auto h = Ci * u * GroupElement<Scalar>(hd) * u.inverse() * wp.conjugator;
  const auto e = Ci * u * GroupElement<Scalar>(ed) * u.inverse() * wp.conjugator;
  return {GroupElement<Scalar>(h.matrix(), g.tol()), GroupElement<Scalar>(e.matrix(), g.tol())};
}

#define HYPLIM_INSTANTIATE(S)                                                          \
  template std::vector<Complex> spectrum<S>(const GroupElement<S>&);                   \
  template double spectral_tolerance<S>(const GroupElement<S>&);                       \
  template IsometryClass classify<S>(const GroupElement<S>&);                          \
  template FixedPointPair<S> fixed_points<S>(const GroupElement<S>&);                  \
  template double translation_length<S>(const GroupElement<S>&);                       \
  template std::pair<GroupElement<S>, GroupElement<S>> jordan_decompose<S>(const GroupElement<S>&);
HYPLIM_INSTANTIATE(double)
HYPLIM_INSTANTIATE(Complex)
#undef HYPLIM_INSTANTIATE

}  // namespace hyplim
