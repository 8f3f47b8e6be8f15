#include "hyplim/geomdata.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>

#include "hyplim/isometry.hpp"

namespace hyplim {

namespace {

// e^z - 1 without cancellation for small |z|.
Complex cexpm1(Complex z) {
  const double a = z.real(), b = z.imag();
  const double sb = std::sin(b / 2.0);
  return {std::expm1(a) * std::cos(b) - 2.0 * sb * sb, std::exp(a) * std::sin(b)};
}

Complex cis(Angle a) { return std::polar(1.0, a.radians()); }

void require_positive_exponent(Exponent m) {
  if (m == 0) throw HyplimError("power 0 is the identity, which is not loxodromic");
  if (m < 0) throw HyplimError("inverse not well positioned (its attracting point is x, not infinity)");
}

double wp_tol(double norm) { return 1e-8 * (1.0 + norm); }

}  // namespace

void GeomDataReal::validate() const {
  if (k() < 1) throw std::invalid_argument("GeomDataReal: k must be positive");
  if (static_cast<int>(theta.size()) != k() / 2)
    throw std::invalid_argument("GeomDataReal: theta must have floor(k/2) entries");
  if (!(y > 0.0) || !std::isfinite(y)) throw std::invalid_argument("GeomDataReal: y must be positive");
  if (!x.allFinite()) throw std::invalid_argument("GeomDataReal: non-finite x");
}

Angle GeomDataComplex::default_phase(const std::vector<Angle>& theta) {
  double s = 0.0;
  for (const Angle& a : theta) s += a.turns();
  return Angle::from_turns(-s / 2.0);
}

GeomDataComplex GeomDataComplex::make(Eigen::VectorXcd x, double t, double y, std::vector<Angle> theta) {
  GeomDataComplex d;
  d.x = std::move(x);
  d.t = t;
  d.y = y;
  d.phase = default_phase(theta);
  d.theta = std::move(theta);
  d.validate();
  return d;
}

void GeomDataComplex::validate() const {
  if (k() < 1) throw std::invalid_argument("GeomDataComplex: k must be positive");
  if (static_cast<int>(theta.size()) != k()) throw std::invalid_argument("GeomDataComplex: theta must have k entries");
  if (!(y > 0.0) || !std::isfinite(y)) throw std::invalid_argument("GeomDataComplex: y must be positive");
  if (!x.allFinite() || !std::isfinite(t)) throw std::invalid_argument("GeomDataComplex: non-finite coordinates");
  double s = 0.0;
  for (const Angle& a : theta) s += a.turns();
  if (std::abs(Angle::reduce(s + 2.0 * phase.turns())) > 1e-9)
    throw std::invalid_argument("GeomDataComplex: phase incompatible with det 1");
}

Eigen::MatrixXd rotation_matrix_real(const std::vector<Angle>& theta, int k) {
  if (static_cast<int>(theta.size()) != k / 2) throw std::invalid_argument("rotation_matrix_real: length mismatch");
  Eigen::MatrixXd A = Eigen::MatrixXd::Identity(k, k);
  for (int b = 0; b < k / 2; ++b) {
    const double c = std::cos(theta[b].radians()), s = std::sin(theta[b].radians());
    A(2 * b, 2 * b) = c;
    A(2 * b, 2 * b + 1) = s;
    A(2 * b + 1, 2 * b) = -s;
    A(2 * b + 1, 2 * b + 1) = c;
  }
  return A;
}

Eigen::VectorXcd phase_diagonal(const std::vector<Angle>& theta) {
  Eigen::VectorXcd a(theta.size());
  for (size_t j = 0; j < theta.size(); ++j) a(j) = cis(theta[j]);
  return a;
}

Eigen::VectorXd translation_vector(const GeomDataReal& d) {
  const int k = d.k();
  const double em1 = std::expm1(-d.y);
  Eigen::VectorXd v(k);
  for (int b = 0; b < k / 2; ++b) {
    const double th = d.theta[b].radians();
    const double s = std::sin(th), h = std::sin(th / 2.0), omc = 2.0 * h * h;
    const double x1 = d.x(2 * b), x2 = d.x(2 * b + 1);
    v(2 * b) = omc * x1 - s * x2 + em1 * x1;
    v(2 * b + 1) = s * x1 + omc * x2 + em1 * x2;
  }
  if (k % 2 == 1) v(k - 1) = em1 * d.x(k - 1);
  return v;
}

Eigen::VectorXcd translation_vector(const GeomDataComplex& d) {
  const int k = d.k();
  Eigen::VectorXcd v(k);
  for (int j = 0; j < k; ++j) {
    const Angle delta = d.phase - d.theta[j];
    v(j) = d.x(j) * cis(d.theta[j]) * cexpm1(Complex(-d.y, delta.radians()));
  }
  return v;
}

GroupElement<double> matrix_from_data(const GeomDataReal& d) {
  d.validate();
  const int k = d.k();
  const double lam = std::exp(d.y);
  const Eigen::MatrixXd A = rotation_matrix_real(d.theta, k);
  const Eigen::VectorXd v = translation_vector(d);
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(k + 2, k + 2);
  M(0, 0) = lam;
  M.block(0, 1, 1, k) = lam * v.transpose() * A;
  M(0, k + 1) = lam * v.squaredNorm() / 2.0;
  M.block(1, 1, k, k) = A;
  M.block(1, k + 1, k, 1) = v;
  M(k + 1, k + 1) = std::exp(-d.y);
  return GroupElement<double>(M);
}

GroupElement<Complex> matrix_from_data(const GeomDataComplex& d) {
  d.validate();
  const int k = d.k();
  const double lam = std::exp(d.y);
  const Complex eph = cis(d.phase);
  const Eigen::VectorXcd a = phase_diagonal(d.theta);
  const Eigen::VectorXcd v = translation_vector(d);
  const double sh = std::sinh(d.y), ch = std::cosh(d.y), shh = std::sinh(d.y / 2.0);
  Complex s = Complex(0.0, -2.0 * d.t) * eph * sh;
  for (int j = 0; j < k; ++j) {
    const Angle delta = d.phase - d.theta[j];
    s += std::norm(d.x(j)) * a(j) * (cexpm1(Complex(0.0, delta.radians())) * ch + 2.0 * shh * shh);
  }
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(k + 2, k + 2);
  M(0, 0) = lam * eph;
  M.block(0, 1, 1, k) = (lam * eph) * (v.adjoint() * a.asDiagonal());
  M(0, k + 1) = s;
  M.block(1, 1, k, k) = a.asDiagonal();
  M.block(1, k + 1, k, 1) = v;
  M(k + 1, k + 1) = eph / lam;
  return GroupElement<Complex>(M);
}

GeomDataReal power_data(const GeomDataReal& d, Exponent m) {
  require_positive_exponent(m);
  GeomDataReal r = d;
  r.y = d.y * to_double(m);
  for (auto& a : r.theta) a = a.times(m);
  return r;
}

GeomDataComplex power_data(const GeomDataComplex& d, Exponent m) {
  require_positive_exponent(m);
  GeomDataComplex r = d;
  r.y = d.y * to_double(m);
  for (auto& a : r.theta) a = a.times(m);
  r.phase = d.phase.times(m);
  return r;
}

BoundaryPoint<double> repelling_point(const GeomDataReal& d) { return BoundaryPoint<double>::finite(d.x); }
BoundaryPoint<Complex> repelling_point(const GeomDataComplex& d) { return BoundaryPoint<Complex>::finite(d.x, d.t); }

BoundaryPoint<double> power_action(const GeomDataReal& d, Exponent N, const BoundaryPoint<double>& p) {
  if (p.is_infinity() || N == 0) return p;
  std::vector<Angle> th(d.theta.size());
  for (size_t i = 0; i < th.size(); ++i) th[i] = d.theta[i].times(N);
  const Eigen::MatrixXd A = rotation_matrix_real(th, d.k());
  return BoundaryPoint<double>::finite(d.x + std::exp(d.y * to_double(N)) * (A * (p.a() - d.x)));
}

BoundaryPoint<Complex> power_action(const GeomDataComplex& d, Exponent N, const BoundaryPoint<Complex>& p) {
  if (p.is_infinity() || N == 0) return p;
  const auto base = repelling_point(d);
  const auto q = heisenberg_mul(heisenberg_inverse(base), p);
  const double sc = std::exp(d.y * to_double(N));
  const Angle phN = d.phase.times(N);
  Eigen::VectorXcd a(d.k());
  for (int j = 0; j < d.k(); ++j) a(j) = sc * cis(d.theta[j].times(N) - phN) * q.a()(j);
  return heisenberg_mul(base, BoundaryPoint<Complex>::finite(a, sc * sc * q.b()));
}

// ---------------------------------------------------------------------------
// Read-out of already well-positioned matrices.

GeomDataReal data_from_matrix(const GroupElement<double>& g) {
  const auto& M = g.matrix();
  const int k = g.k();
  const double tol = wp_tol(inf_norm<double>(M));
  if (!(M(0, 0) > 1.0)) throw HyplimError("not well positioned: M(0,0) <= 1 (y must be positive)");
  if (M.block(1, 0, k + 1, 1).cwiseAbs().maxCoeff() > tol)
    throw HyplimError("not well positioned: infinity is not fixed (first column)");
  if (M.block(k + 1, 0, 1, k + 1).cwiseAbs().maxCoeff() > tol)
    throw HyplimError("not well positioned: last row not of the form (0, ..., 0, 1/lambda)");
  if (std::abs(M(0, 0) * M(k + 1, k + 1) - 1.0) > tol)
    throw HyplimError("not well positioned: corner entries are not lambda, 1/lambda");
  const Eigen::MatrixXd A = M.block(1, 1, k, k);
  GeomDataReal d;
  d.y = std::log(M(0, 0));
  d.theta.resize(k / 2);
  Eigen::MatrixXd mask = A;
  for (int b = 0; b < k / 2; ++b) {
    const double c = A(2 * b, 2 * b), s = A(2 * b, 2 * b + 1);
    if (std::abs(c - A(2 * b + 1, 2 * b + 1)) > tol || std::abs(s + A(2 * b + 1, 2 * b)) > tol)
      throw HyplimError("not well positioned: elliptic block " + std::to_string(b + 1) + " is not a rotation");
    d.theta[b] = Angle::from_radians(std::atan2(s, c));
    mask.block(2 * b, 2 * b, 2, 2).setZero();
  }
  if (k % 2 == 1) {
    if (std::abs(A(k - 1, k - 1) - 1.0) > tol) throw HyplimError("not well positioned: trailing entry is not 1");
    mask(k - 1, k - 1) = 0.0;
  }
  if (mask.cwiseAbs().maxCoeff() > tol) throw HyplimError("not well positioned: elliptic part not block diagonal");
  const Eigen::VectorXd v = M.block(1, k + 1, k, 1);
  const double em1 = std::expm1(-d.y);
  d.x.resize(k);
  for (int b = 0; b < k / 2; ++b) {
    const double th = d.theta[b].radians();
    const double s = std::sin(th), h = std::sin(th / 2.0);
    const double p = em1 + 2.0 * h * h;  // lambda^{-1} - cos(theta)
    const double det = p * p + s * s;
    d.x(2 * b) = (p * v(2 * b) + s * v(2 * b + 1)) / det;
    d.x(2 * b + 1) = (-s * v(2 * b) + p * v(2 * b + 1)) / det;
  }
  if (k % 2 == 1) d.x(k - 1) = v(k - 1) / em1;
  const double res = inf_norm<double>(Eigen::MatrixXd(matrix_from_data(d).matrix() - M));
  if (res > tol * (1.0 + inf_norm<double>(M))) throw HyplimError("not well positioned: first row inconsistent with the translation part");
  return d;
}

GeomDataComplex data_from_matrix(const GroupElement<Complex>& g) {
  const auto& M = g.matrix();
  const int k = g.k();
  const double tol = wp_tol(inf_norm<Complex>(M));
  if (!(std::abs(M(0, 0)) > 1.0)) throw HyplimError("not well positioned: |M(0,0)| <= 1 (y must be positive)");
  if (M.block(1, 0, k + 1, 1).cwiseAbs().maxCoeff() > tol)
    throw HyplimError("not well positioned: infinity is not fixed (first column)");
  if (M.block(k + 1, 0, 1, k + 1).cwiseAbs().maxCoeff() > tol)
    throw HyplimError("not well positioned: last row not of the form (0, ..., 0, mu)");
  GeomDataComplex d;
  d.y = std::log(std::abs(M(0, 0)));
  if (d.y < 1e-12) throw HyplimError("not well positioned: translation length below 1e-12");
  d.phase = Angle::from_radians(std::arg(M(0, 0)));
  if (std::abs(M(k + 1, k + 1) - cis(d.phase) * std::exp(-d.y)) > tol)
    throw HyplimError("not well positioned: corner entries are not lambda e^{i phi}, lambda^{-1} e^{i phi}");
  const Eigen::MatrixXcd A = M.block(1, 1, k, k);
  Eigen::MatrixXcd off = A;
  d.theta.resize(k);
  for (int j = 0; j < k; ++j) {
    if (std::abs(std::abs(A(j, j)) - 1.0) > tol) throw HyplimError("not well positioned: diagonal entry off the unit circle");
    d.theta[j] = Angle::from_radians(std::arg(A(j, j)));
    off(j, j) = 0.0;
  }
  if (off.cwiseAbs().maxCoeff() > tol) throw HyplimError("not well positioned: elliptic part not diagonal");
  double s = 0.0;
  for (const Angle& a : d.theta) s += a.turns();
  if (std::abs(Angle::reduce(s + 2.0 * d.phase.turns())) > 1e-8)
    throw HyplimError("not well positioned: determinant constraint violated");
  const Eigen::VectorXcd v = M.block(1, k + 1, k, 1);
  d.x.resize(k);
  for (int j = 0; j < k; ++j) {
    const Angle delta = d.phase - d.theta[j];
    d.x(j) = v(j) / (cis(d.theta[j]) * cexpm1(Complex(-d.y, delta.radians())));
  }
  const Complex r = (M(0, k + 1) - d.x.dot(v)) * std::conj(cis(d.phase));
  d.t = -r.imag() / (2.0 * std::sinh(d.y));
  const double res = inf_norm<Complex>(Eigen::MatrixXcd(matrix_from_data(d).matrix() - M));
  if (res > tol * (1.0 + inf_norm<Complex>(M))) throw HyplimError("not well positioned: first row inconsistent with the translation part");
  return d;
}

// ---------------------------------------------------------------------------
// Well positioning.

namespace {

// Orthogonal change to the basis f_0 = (e_0+e_{k+1})/sqrt2, e_1..e_k, f_{k+1} = (e_0-e_{k+1})/sqrt2,
// in which Q = diag(1, -1, ..., -1). Symmetric and involutive.
template <typename Scalar>
Mat<Scalar> ball_basis(int k) {
  Mat<Scalar> P = Mat<Scalar>::Identity(k + 2, k + 2);
  const double h = 1.0 / std::sqrt(2.0);
  P(0, 0) = h;
  P(k + 1, 0) = h;
  P(0, k + 1) = h;
  P(k + 1, k + 1) = -h;
  return P;
}

// Element of K carrying the boundary point p to infinity.
template <typename Scalar>
GroupElement<Scalar> rotate_to_infinity(const BoundaryPoint<Scalar>& p) {
  const int k = p.k();
  const Mat<Scalar> P = ball_basis<Scalar>(k);
  const Vec<Scalar> c = P * boundary_embed(p);
  Vec<Scalar> w = c.tail(k + 1) / c(0);
  w /= w.norm();
  const double wl = std::abs(w(k));
  const Scalar zeta = wl > 0.0 ? Scalar(w(k) / wl) : Scalar(1);
  Vec<Scalar> u = w;
  u(k) -= zeta;
  Mat<Scalar> H = Mat<Scalar>::Identity(k + 1, k + 1);
  Scalar detH(1);
  if (u.norm() > 1e-15) {
    H -= (2.0 / u.squaredNorm()) * u * u.adjoint();
    detH = Scalar(-1);
  }
  Mat<Scalar> U = H;
  U.row(0) *= conj(zeta) / detH;
  Mat<Scalar> B = Mat<Scalar>::Zero(k + 2, k + 2);
  B(0, 0) = zeta;
  B.block(1, 1, k + 1, k + 1) = U;
  return GroupElement<Scalar>(P * B * P);
}

template <typename Scalar>
struct Normalized {
  GroupElement<Scalar> k1;
  GroupElement<Scalar> g1;
  BoundaryPoint<Scalar> x1;
  Mat<Scalar> D;
};

template <typename Scalar>
Normalized<Scalar> normalize(const GroupElement<Scalar>& g) {
  if (classify(g).kind != IsometryClass::Kind::Loxodromic) throw HyplimError("well_position: element is not loxodromic");
  const auto fp = fixed_points(g);
  const auto k1 = rotate_to_infinity(fp.attracting);
  const auto g1 = k1 * g * k1.inverse();
  const auto x1 = act(k1, fp.repelling, 1e-6);
  if (x1.is_infinity()) throw HyplimError("well_position: fixed points collapsed numerically");
  const auto u = unipotent_from_vector(x1);
  Mat<Scalar> D = (u.inverse() * g1 * u).matrix();
  return {k1, g1, x1, D};
}

template <typename Scalar>
Mat<Scalar> embed_middle(const Mat<Scalar>& R, Scalar corner) {
  const Eigen::Index k = R.rows();
  Mat<Scalar> r = Mat<Scalar>::Zero(k + 2, k + 2);
  r(0, 0) = corner;
  r(k + 1, k + 1) = corner;
  r.block(1, 1, k, k) = R;
  return r;
}

}  // namespace

WellPositioned<double> well_position(const GroupElement<double>& g) {
  const int k = g.k();
  const auto nz = normalize(g);
  const Eigen::MatrixXd Ap = nz.D.block(1, 1, k, k);
  Eigen::RealSchur<Eigen::MatrixXd> schur(Ap);
  const Eigen::MatrixXd& T = schur.matrixT();
  const Eigen::MatrixXd& U = schur.matrixU();

  std::vector<std::pair<Eigen::VectorXd, Eigen::VectorXd>> planes;
  std::vector<Eigen::VectorXd> plus, minus;
  for (int i = 0; i < k;) {
    if (i + 1 < k && T(i + 1, i) != 0.0) {
      planes.emplace_back(U.col(i), U.col(i + 1));
      i += 2;
    } else {
      (T(i, i) > 0 ? plus : minus).push_back(U.col(i));
      i += 1;
    }
  }
  if (minus.size() % 2 == 1) throw HyplimError("well_position: elliptic part is not orientation preserving");
  for (size_t i = 0; i + 1 < minus.size(); i += 2) planes.emplace_back(minus[i], minus[i + 1]);
  for (size_t i = 0; i + 1 < plus.size(); i += 2) planes.emplace_back(plus[i], plus[i + 1]);
  const bool has_axis = plus.size() % 2 == 1;
  if (has_axis != (k % 2 == 1)) throw HyplimError("well_position: unexpected eigenvalue structure of the elliptic part");
  Eigen::VectorXd axis = has_axis ? plus.back() : Eigen::VectorXd();

  auto theta_of = [&](const Eigen::VectorXd& u, const Eigen::VectorXd& w) {
    return std::atan2(u.dot(Ap * w), u.dot(Ap * u));
  };
  auto det_of = [&]() {
    Eigen::MatrixXd R(k, k);
    for (size_t b = 0; b < planes.size(); ++b) {
      R.row(2 * b) = planes[b].first.transpose();
      R.row(2 * b + 1) = planes[b].second.transpose();
    }
    if (has_axis) R.row(k - 1) = axis.transpose();
    return R;
  };

  if (det_of().determinant() < 0) {
    if (has_axis) axis = -axis;
    else planes.front().second = -planes.front().second;
  }
  const Eigen::VectorXd& xp = nz.x1.a();
  for (auto& [u, w] : planes) {
    const double a = u.dot(xp), b = w.dot(xp), r = std::hypot(a, b);
    if (r == 0.0) continue;
    const Eigen::VectorXd nu = (b * u - a * w) / r, nw = (a * u + b * w) / r;
    u = nu;
    w = nw;
  }
  const double eps = 1e-12;
  std::vector<size_t> negative;
  for (size_t b = 0; b < planes.size(); ++b)
    if (theta_of(planes[b].first, planes[b].second) < -eps) negative.push_back(b);
  if (negative.size() % 2 == 1) {
    bool fixed = false;
    if (has_axis) {
      axis = -axis;
      fixed = true;
    } else {
      for (size_t b = 0; b < planes.size() && !fixed; ++b) {
        const double th = theta_of(planes[b].first, planes[b].second);
        if (std::abs(std::sin(th)) <= eps && th >= -eps) {
          planes[b].first = -planes[b].first;
          fixed = true;
        }
      }
    }
    if (!fixed) {
      // leave the block nearest the fixed point with a negative angle
      auto keep = std::min_element(negative.begin(), negative.end(), [&](size_t i, size_t j) {
        return planes[i].second.dot(xp) < planes[j].second.dot(xp);
      });
      negative.erase(keep);
    }
  }
  for (size_t b : negative) planes[b].first = -planes[b].first;

  std::vector<size_t> order(planes.size());
  std::iota(order.begin(), order.end(), 0);
  auto key = [&](size_t b) {
    const double th = theta_of(planes[b].first, planes[b].second);
    return std::make_pair(planes[b].second.dot(xp), th < 0 ? th + kTwoPi : th);
  };
  std::stable_sort(order.begin(), order.end(), [&](size_t i, size_t j) { return key(i) < key(j); });
  std::vector<std::pair<Eigen::VectorXd, Eigen::VectorXd>> sorted;
  for (size_t b : order) sorted.push_back(planes[b]);
  planes = std::move(sorted);

  const Eigen::MatrixXd R = det_of();
  const GroupElement<double> r(embed_middle<double>(R, 1.0));
  const GroupElement<double> C = r * nz.k1;

  GeomDataReal d;
  d.x = R * xp;
  for (int b = 0; b < k / 2; ++b) d.x(2 * b) = 0.0;  // exact zero after in-plane alignment
  d.y = std::log(nz.D(0, 0));
  for (const auto& [u, w] : planes) d.theta.push_back(Angle::from_radians(theta_of(u, w)));
  return {C, d};
}

WellPositioned<Complex> well_position(const GroupElement<Complex>& g) {
  const int k = g.k();
  const auto nz = normalize(g);
  const Eigen::MatrixXcd Ap = nz.D.block(1, 1, k, k);
  Eigen::ComplexSchur<Eigen::MatrixXcd> schur(Ap);
  const Eigen::MatrixXcd R1 = schur.matrixU().adjoint();
  const Complex e1 = std::polar(1.0, -std::arg(R1.determinant()) / 2.0);
  Eigen::MatrixXcd r = embed_middle<Complex>(R1, e1);

  auto x_of = [&](const Eigen::MatrixXcd& m) { return act(GroupElement<Complex>(m), nz.x1, 1e-6); };
  const Eigen::MatrixXcd Ad = R1 * Ap * R1.adjoint();
  Eigen::VectorXcd x = x_of(r).a();
  std::vector<int> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  auto key = [&](int j) {
    const double th = std::arg(Ad(j, j));
    return std::make_pair(std::abs(x(j)), th < 0 ? th + kTwoPi : th);
  };
  std::stable_sort(perm.begin(), perm.end(), [&](int i, int j) { return key(i) < key(j); });
  Eigen::MatrixXcd Pm = Eigen::MatrixXcd::Zero(k, k);
  for (int j = 0; j < k; ++j) Pm(j, perm[j]) = 1.0;
  const Complex e2 = std::polar(1.0, -std::arg(Pm.determinant()) / 2.0);
  r = embed_middle<Complex>(Pm, e2) * r;

  x = x_of(r).a();
  Eigen::VectorXd beta(k);
  for (int j = 0; j < k; ++j) beta(j) = std::abs(x(j)) > 0.0 ? -std::arg(x(j)) : 0.0;
  const double psi = -beta.sum() / (k + 2);
  Eigen::VectorXcd ph(k);
  for (int j = 0; j < k; ++j) ph(j) = std::polar(1.0, psi + beta(j));
  r = embed_middle<Complex>(Eigen::MatrixXcd(ph.asDiagonal()), std::polar(1.0, psi)) * r;

  const GroupElement<Complex> rr(r);
  const GroupElement<Complex> C = rr * nz.k1;
  const auto xt = x_of(r);
  const Eigen::MatrixXcd Df = r * nz.D * rr.inverse().matrix();

  GeomDataComplex d;
  d.x = xt.a().real().cast<Complex>();
  d.t = xt.b();
  d.y = std::log(std::abs(Df(0, 0)));
  d.phase = Angle::from_radians(std::arg(Df(0, 0)));
  for (int j = 0; j < k; ++j) d.theta.push_back(Angle::from_radians(std::arg(Df(j + 1, j + 1))));
  return {C, d};
}

}  // namespace hyplim
