#pragma once

#include <cmath>
#include <optional>

#include "hyplim/types.hpp"

namespace hyplim {

inline constexpr double kDefaultTol = 1e-10;

// Q: 1 in the corners (0,k+1), (k+1,0); -I_k in the middle.
template <typename Scalar>
Mat<Scalar> form_matrix(int k) {
  if (k < 1) throw std::invalid_argument("k must be positive");
  Mat<Scalar> Q = Mat<Scalar>::Zero(k + 2, k + 2);
  Q(0, k + 1) = Scalar(1);
  Q(k + 1, 0) = Scalar(1);
  for (int j = 1; j <= k; ++j) Q(j, j) = Scalar(-1);
  return Q;
}

// Psi(z, w), conjugate-linear in z.
template <typename Scalar>
Scalar form_eval(const Vec<Scalar>& z, const Vec<Scalar>& w) {
  if (z.size() != w.size() || z.size() < 3) throw std::invalid_argument("form_eval: dimension mismatch");
  const Eigen::Index e = z.size() - 1;
  Scalar r = conj(z(0)) * w(e) + conj(z(e)) * w(0);
  for (Eigen::Index j = 1; j < e; ++j) r -= conj(z(j)) * w(j);
  return r;
}

template <typename Scalar>
class GroupElement {
 public:
  using Matrix = Mat<Scalar>;

  explicit GroupElement(Matrix m, double tol = kDefaultTol) : m_(std::move(m)), tol_(tol) {
    if (m_.rows() != m_.cols()) throw std::invalid_argument("GroupElement: matrix must be square");
    if (m_.rows() < 3) throw std::invalid_argument("GroupElement: size must be k+2 with k >= 1");
    if (tol_ < 0) throw std::invalid_argument("GroupElement: negative tolerance");
  }

  static GroupElement identity(int k) { return GroupElement(Matrix::Identity(k + 2, k + 2)); }

  int k() const { return static_cast<int>(m_.rows()) - 2; }
  static constexpr FieldTag field() { return FieldTraits<Scalar>::tag; }
  const Matrix& matrix() const { return m_; }
  double tol() const { return tol_; }
  Scalar operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }

  GroupElement operator*(const GroupElement& o) const {
    if (o.k() != k()) throw std::invalid_argument("GroupElement: dimension mismatch");
    return GroupElement(m_ * o.m_, std::max(tol_, o.tol_));
  }

  // M^{-1} = Q M^* Q for form-preserving M.
  GroupElement inverse() const {
    const Matrix Q = form_matrix<Scalar>(k());
    return GroupElement(Q * m_.adjoint() * Q, tol_);
  }

  GroupElement pow(long long m) const {
    GroupElement base = m < 0 ? inverse() : *this;
    unsigned long long e = m < 0 ? static_cast<unsigned long long>(-(m + 1)) + 1ULL : static_cast<unsigned long long>(m);
    GroupElement r = identity(k());
    while (e) {
      if (e & 1ULL) r = r * base;
      base = base * base;
      e >>= 1;
    }
    return r;
  }

 private:
  Matrix m_;
  double tol_;
};

template <typename Scalar>
double inf_norm(const Mat<Scalar>& m) {
  return m.cwiseAbs().rowwise().sum().maxCoeff();
}

// Residual of M^* Q M - Q and det M - 1, both scaled by (1 + |M|^2).
template <typename Scalar>
struct MembershipResidual {
  double form = 0.0;
  double det = 0.0;
  double scale = 1.0;
};

template <typename Scalar>
MembershipResidual<Scalar> membership_residual(const GroupElement<Scalar>& g) {
  const auto& M = g.matrix();
  const Mat<Scalar> Q = form_matrix<Scalar>(g.k());
  MembershipResidual<Scalar> r;
  const double nm = inf_norm<Scalar>(M);
  r.scale = 1.0 + nm * nm;
  r.form = inf_norm<Scalar>(Mat<Scalar>(M.adjoint() * Q * M - Q));
  r.det = std::abs(M.determinant() - Scalar(1));
  return r;
}

template <typename Scalar>
bool is_in_group(const GroupElement<Scalar>& g) {
  const auto r = membership_residual(g);
  return r.form <= g.tol() * r.scale && r.det <= g.tol() * r.scale;
}

// Finite boundary point: a in F^k, plus the Heisenberg height b (complex case only).
template <typename Scalar>
class BoundaryPoint {
 public:
  static BoundaryPoint infinity(int k) {
    BoundaryPoint p;
    p.k_ = k;
    p.infinite_ = true;
    p.a_ = Vec<Scalar>::Zero(k);
    return p;
  }
  static BoundaryPoint finite(Vec<Scalar> a, double b = 0.0) {
    if (a.size() < 1) throw std::invalid_argument("BoundaryPoint: empty coordinates");
    if constexpr (!is_complex_v<Scalar>) {
      if (b != 0.0) throw std::invalid_argument("BoundaryPoint: real points carry no height");
    }
    BoundaryPoint p;
    p.k_ = static_cast<int>(a.size());
    p.a_ = std::move(a);
    p.b_ = b;
    return p;
  }
  static BoundaryPoint origin(int k) { return finite(Vec<Scalar>::Zero(k)); }

  int k() const { return k_; }
  bool is_infinity() const { return infinite_; }
  const Vec<Scalar>& a() const { return a_; }
  double b() const { return b_; }

 private:
  int k_ = 0;
  bool infinite_ = false;
  Vec<Scalar> a_;
  double b_ = 0.0;
};

template <typename Scalar>
Vec<Scalar> boundary_embed(const BoundaryPoint<Scalar>& p) {
  const int k = p.k();
  Vec<Scalar> v = Vec<Scalar>::Zero(k + 2);
  if (p.is_infinity()) {
    v(0) = Scalar(1);
    return v;
  }
  const double a2 = p.a().squaredNorm();
  if constexpr (is_complex_v<Scalar>) {
    v(0) = Complex(a2 / 2.0, p.b());
  } else {
    v(0) = a2 / 2.0;
  }
  v.segment(1, k) = p.a();
  v(k + 1) = Scalar(1);
  return v;
}

template <typename Scalar>
BoundaryPoint<Scalar> boundary_extract(const Vec<Scalar>& v, double tol = 1e-10) {
  if (v.size() < 3) throw std::invalid_argument("boundary_extract: dimension mismatch");
  const double nv = v.cwiseAbs().maxCoeff();
  if (nv == 0.0) throw HyplimError("not a boundary point (zero vector)");
  if (std::abs(form_eval<Scalar>(v, v)) > tol * nv * nv) throw HyplimError("not a boundary point");
  const int k = static_cast<int>(v.size()) - 2;
  const Scalar last = v(k + 1);
  if (std::abs(last) <= tol * nv) return BoundaryPoint<Scalar>::infinity(k);
  Vec<Scalar> w = v / last;
  if constexpr (is_complex_v<Scalar>) {
    return BoundaryPoint<Scalar>::finite(w.segment(1, k), w(0).imag());
  } else {
    return BoundaryPoint<Scalar>::finite(w.segment(1, k));
  }
}

// Group law on the finite boundary: vector addition (real) or Heisenberg product (complex).
template <typename Scalar>
BoundaryPoint<Scalar> heisenberg_mul(const BoundaryPoint<Scalar>& p, const BoundaryPoint<Scalar>& q) {
  if (p.is_infinity() || q.is_infinity()) throw std::invalid_argument("heisenberg_mul: finite points only");
  if (p.k() != q.k()) throw std::invalid_argument("heisenberg_mul: dimension mismatch");
  if constexpr (is_complex_v<Scalar>) {
    const double twist = p.a().dot(q.a()).imag();  // dot conjugates the first argument
    return BoundaryPoint<Scalar>::finite(p.a() + q.a(), p.b() + q.b() + twist);
  } else {
    return BoundaryPoint<Scalar>::finite(p.a() + q.a());
  }
}

template <typename Scalar>
BoundaryPoint<Scalar> heisenberg_inverse(const BoundaryPoint<Scalar>& p) {
  if constexpr (is_complex_v<Scalar>) {
    return BoundaryPoint<Scalar>::finite(-p.a(), -p.b());
  } else {
    return BoundaryPoint<Scalar>::finite(-p.a());
  }
}

template <typename Scalar>
GroupElement<Scalar> unipotent_from_vector(const BoundaryPoint<Scalar>& p) {
  if (p.is_infinity()) throw std::invalid_argument("unipotent_from_vector: finite point required");
  const int k = p.k();
  Mat<Scalar> M = Mat<Scalar>::Identity(k + 2, k + 2);
  M.block(0, 1, 1, k) = p.a().adjoint();
  M.block(1, k + 1, k, 1) = p.a();
  M(0, k + 1) = boundary_embed(p)(0);
  return GroupElement<Scalar>(M);
}

template <typename Scalar>
BoundaryPoint<Scalar> act(const GroupElement<Scalar>& g, const BoundaryPoint<Scalar>& p, double tol = 1e-8) {
  if (g.k() != p.k()) throw std::invalid_argument("act: dimension mismatch");
  return boundary_extract<Scalar>(Vec<Scalar>(g.matrix() * boundary_embed(p)), tol);
}

// Projective distance between boundary points on the unit sphere of the ball model.
template <typename Scalar>
Vec<Scalar> sphere_coordinates(const Vec<Scalar>& v) {
  const Eigen::Index e = v.size() - 1;
  const double r2 = std::sqrt(2.0);
  const Scalar c0 = (v(0) + v(e)) / r2;
  if (std::abs(c0) == 0.0) throw HyplimError("sphere_coordinates: not a null vector");
  Vec<Scalar> w(e);
  w.head(e - 1) = v.segment(1, e - 1) / c0;
  w(e - 1) = (v(0) - v(e)) / r2 / c0;
  return w;
}

template <typename Scalar>
double chordal_distance(const BoundaryPoint<Scalar>& p, const BoundaryPoint<Scalar>& q) {
  return (sphere_coordinates<Scalar>(boundary_embed(p)) - sphere_coordinates<Scalar>(boundary_embed(q))).norm();
}

// Cygan distance; Euclidean in the real case.
template <typename Scalar>
double boundary_distance(const BoundaryPoint<Scalar>& p, const BoundaryPoint<Scalar>& q) {
  return std::sqrt(2.0 * std::abs(form_eval<Scalar>(boundary_embed(p), boundary_embed(q))));
}

}  // namespace hyplim
