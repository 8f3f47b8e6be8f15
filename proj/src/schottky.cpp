#include "hyplim/schottky.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hyplim/parallel.hpp"

namespace hyplim {

namespace {

double wrap_angle(double t) {
  // into [-pi, pi)
  double r = std::remainder(t, kTwoPi);
  if (r >= kPi) r -= kTwoPi;
  return r;
}

double radical_inverse(std::size_t i, int base) {
  double f = 1.0, r = 0.0;
  while (i > 0) {
    f /= base;
    r += f * static_cast<double>(i % base);
    i /= base;
  }
  return r;
}

constexpr int kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113, 127, 131, 137, 139};

std::vector<double> halton(std::size_t index, int dim) {
  if (dim > static_cast<int>(std::size(kPrimes))) throw std::invalid_argument("halton: dimension too large");
  std::vector<double> u(dim);
  for (int j = 0; j < dim; ++j) u[j] = radical_inverse(index + 1, kPrimes[j]);
  return u;
}

template <typename Scalar>
BoundaryPoint<Scalar> dilate(const BoundaryPoint<Scalar>& q, double r) {
  return BoundaryPoint<Scalar>::finite(Vec<Scalar>(q.a() * r), q.b() * r * r);
}

// a point from cube coordinates in [-1, 1]
template <typename Scalar>
BoundaryPoint<Scalar> cube_point(const std::vector<double>& u, int k) {
  Vec<Scalar> a(k);
  for (int j = 0; j < k; ++j) {
    if constexpr (is_complex_v<Scalar>) {
      a(j) = Complex(2 * u[2 * j] - 1, 2 * u[2 * j + 1] - 1);
    } else {
      a(j) = 2 * u[j] - 1;
    }
  }
  if constexpr (is_complex_v<Scalar>) {
    return BoundaryPoint<Scalar>::finite(a, 2 * u[2 * k] - 1);
  } else {
    return BoundaryPoint<Scalar>::finite(a);
  }
}

template <typename Scalar>
int cube_dim(int k) {
  return is_complex_v<Scalar> ? 2 * k + 1 : k;
}

template <typename Scalar>
int homogeneous_dim(int k) {
  return is_complex_v<Scalar> ? 2 * k + 2 : k;
}

template <typename Scalar>
double norm_from_origin(const BoundaryPoint<Scalar>& q) {
  return boundary_distance(q, BoundaryPoint<Scalar>::origin(q.k()));
}

}  // namespace

// ---------------------------------------------------------------------------

template <typename Scalar>
PolarCoords<Scalar> polar_coords(const BoundaryPoint<Scalar>& p, const BoundaryPoint<Scalar>& center) {
  if (p.is_infinity() || center.is_infinity()) throw std::invalid_argument("polar_coords: finite points required");
  PolarCoords<Scalar> pc;
  pc.center = center;
  const int k = p.k();
  if constexpr (is_complex_v<Scalar>) {
    const auto q = heisenberg_mul(heisenberg_inverse(center), p);
    for (int j = 0; j < k; ++j) {
      pc.radii.push_back(std::abs(q.a()(j)));
      pc.angles.push_back(wrap_angle(std::arg(q.a()(j))));
    }
    pc.height = q.b();
  } else {
    const Eigen::VectorXd d = p.a() - center.a();
    for (int i = 0; i + 1 < k; i += 2) {
      pc.radii.push_back(std::hypot(d(i), d(i + 1)));
      pc.angles.push_back(wrap_angle(std::atan2(d(i), d(i + 1))));
    }
    if (k % 2 == 1) {
      pc.radii.push_back(std::abs(d(k - 1)));
      pc.angles.push_back(d(k - 1) < 0 ? -kPi : 0.0);
    }
  }
  return pc;
}

template <typename Scalar>
BoundaryPoint<Scalar> from_polar(const PolarCoords<Scalar>& pc) {
  const int k = pc.center.k();
  if constexpr (is_complex_v<Scalar>) {
    Eigen::VectorXcd a(k);
    for (int j = 0; j < k; ++j) a(j) = std::polar(pc.radii[j], pc.angles[j]);
    return heisenberg_mul(pc.center, BoundaryPoint<Complex>::finite(a, pc.height));
  } else {
    Eigen::VectorXd d(k);
    int b = 0;
    for (int i = 0; i + 1 < k; i += 2, ++b) {
      d(i) = pc.radii[b] * std::sin(pc.angles[b]);
      d(i + 1) = pc.radii[b] * std::cos(pc.angles[b]);
    }
    if (k % 2 == 1) d(k - 1) = pc.radii[b] * std::cos(pc.angles[b]);
    return BoundaryPoint<double>::finite(Eigen::VectorXd(pc.center.a() + d));
  }
}

PolarCoords<double> polar_action(const GeomDataReal& d, Exponent N, const PolarCoords<double>& pc) {
  PolarCoords<double> r = pc;
  const double sc = std::exp(d.y * to_double(N));
  for (std::size_t i = 0; i < r.radii.size(); ++i) {
    r.radii[i] *= sc;
    if (i < d.theta.size()) r.angles[i] = wrap_angle(pc.angles[i] + d.theta[i].times(N).radians());
  }
  return r;
}

PolarCoords<Complex> polar_action(const GeomDataComplex& d, Exponent N, const PolarCoords<Complex>& pc) {
  PolarCoords<Complex> r = pc;
  const double sc = std::exp(d.y * to_double(N));
  const Angle ph = d.phase.times(N);
  for (std::size_t i = 0; i < r.radii.size(); ++i) {
    r.radii[i] *= sc;
    r.angles[i] = wrap_angle(pc.angles[i] + (d.theta[i].times(N) - ph).radians());
  }
  r.height = pc.height * sc * sc;
  return r;
}

// ---------------------------------------------------------------------------

template <typename Scalar>
double BoundaryRegion<Scalar>::excess(const BoundaryPoint<Scalar>& p) const {
  if (p.is_infinity()) return std::numeric_limits<double>::infinity();
  if (shape == RegionShape::Ball) return boundary_distance(p, center) - radius;
  const auto q = heisenberg_mul(heisenberg_inverse(center), p);
  return std::max(q.a().norm(), std::abs(q.b())) - radius;
}

template <typename Scalar>
std::vector<BoundaryPoint<Scalar>> BoundaryRegion<Scalar>::samples(std::size_t count) const {
  const int k = center.k();
  const int dim = cube_dim<Scalar>(k);
  std::vector<BoundaryPoint<Scalar>> out;
  out.reserve(count);
  for (std::size_t i = 0; out.size() < count; ++i) {
    const auto u = halton(i, dim + 1);
    auto q = cube_point<Scalar>(u, k);
    const bool on_boundary = (i % 2 == 0);
    if (shape == RegionShape::Ball) {
      const double rho = norm_from_origin(q);
      if (rho < 1e-9) continue;
      const double t = on_boundary ? 1.0 : std::pow(u[dim], 1.0 / homogeneous_dim<Scalar>(k));
      q = dilate(q, radius * t / rho);
    } else {
      const double an = q.a().norm();
      if (an > 1.0 || an < 1e-9) continue;
      Vec<Scalar> a = q.a() * radius;
      double b = q.b() * radius;
      if (on_boundary) {
        if (u[dim] < 0.5) {
          a *= 1.0 / an;
        } else {
          b = b < 0 ? -radius : radius;
        }
      }
      q = BoundaryPoint<Scalar>::finite(a, b);
    }
    out.push_back(heisenberg_mul(center, q));
  }
  return out;
}

template struct BoundaryRegion<double>;
template struct BoundaryRegion<Complex>;

// ---------------------------------------------------------------------------

namespace {

// min excess of g^N(samples) for N = +-1..+-cap; index 2(|N|-1) + (N < 0)
std::vector<double> image_excess(const GeomDataReal& d, const BoundaryRegion<double>& region, Exponent cap,
                                 std::size_t count) {
  const auto pts = region.samples(count);
  const int k = d.k();
  Eigen::MatrixXd Q(k, pts.size());
  for (std::size_t s = 0; s < pts.size(); ++s) Q.col(s) = pts[s].a() - d.x;
  const std::size_t total = static_cast<std::size_t>(2 * cap);
  std::vector<double> out(total);
  parallel_for(total, [&](std::size_t idx) {
    const Exponent N = (idx % 2 ? -1 : 1) * static_cast<Exponent>(idx / 2 + 1);
    std::vector<Angle> th;
    for (const auto& a : d.theta) th.push_back(a.times(N));
    const Eigen::MatrixXd A = std::exp(d.y * to_double(N)) * rotation_matrix_real(th, k);
    const Eigen::MatrixXd P = (A * Q).colwise() + (d.x - region.center.a());
    double m = std::numeric_limits<double>::infinity();
    if (region.shape == RegionShape::Ball) {
      m = P.colwise().norm().minCoeff() - region.radius;
    } else {
      throw std::invalid_argument("real regions must be balls");
    }
    out[idx] = m;
  });
  return out;
}

std::vector<double> image_excess(const GeomDataComplex& d, const BoundaryRegion<Complex>& region, Exponent cap,
                                 std::size_t count) {
  const auto pts = region.samples(count);
  const int k = d.k();
  const auto base = repelling_point(d);
  const auto base_inv = heisenberg_inverse(base);
  std::vector<BoundaryPoint<Complex>> qs;
  for (const auto& p : pts) qs.push_back(heisenberg_mul(base_inv, p));
  const std::size_t total = static_cast<std::size_t>(2 * cap);
  std::vector<double> out(total);
  parallel_for(total, [&](std::size_t idx) {
    const Exponent N = (idx % 2 ? -1 : 1) * static_cast<Exponent>(idx / 2 + 1);
    const double sc = std::exp(d.y * to_double(N));
    const Angle ph = d.phase.times(N);
    Eigen::VectorXcd rot(k);
    for (int j = 0; j < k; ++j) rot(j) = sc * std::polar(1.0, (d.theta[j].times(N) - ph).radians());
    double m = std::numeric_limits<double>::infinity();
    for (const auto& q : qs) {
      const auto img = heisenberg_mul(base, BoundaryPoint<Complex>::finite(rot.cwiseProduct(q.a()), sc * sc * q.b()));
      m = std::min(m, region.excess(img));
    }
    out[idx] = m;
  });
  return out;
}

}  // namespace

template <typename Data>
PingPongCertificate fundamental_region_certificate(const Data& d, const BoundaryRegion<ScalarOf<Data>>& region, Exponent cap,
                                                   std::size_t samples) {
  if (cap < 1) throw std::invalid_argument("exponent cap must be at least 1");
  if (!(d.y > 0)) throw std::invalid_argument("fundamental_region_certificate: loxodromic data required");
  if (!(region.radius > 0)) throw std::invalid_argument("fundamental_region_certificate: radius must be positive");
  const auto ex = image_excess(d, region, cap, samples);
  PingPongCertificate c;
  c.cap = cap;
  c.samples = samples;
  const auto it = std::min_element(ex.begin(), ex.end());
  c.margin = *it;
  const std::size_t idx = static_cast<std::size_t>(it - ex.begin());
  c.worst_exponent = (idx % 2 ? -1 : 1) * static_cast<Exponent>(idx / 2 + 1);
  c.verdict = c.margin > 0;
  return c;
}

template <typename Data>
std::vector<Exponent> returning_exponents(const Data& d, const BoundaryRegion<ScalarOf<Data>>& region, Exponent cap,
                                          std::size_t samples) {
  if (cap < 1) throw std::invalid_argument("exponent cap must be at least 1");
  const auto ex = image_excess(d, region, cap, samples);
  std::vector<Exponent> r;
  for (std::size_t i = 0; i < ex.size(); i += 2)
    if (ex[i] <= 0) r.push_back(static_cast<Exponent>(i / 2 + 1));
  return r;
}

template PingPongCertificate fundamental_region_certificate<GeomDataReal>(const GeomDataReal&, const BoundaryRegion<double>&,
                                                                          Exponent, std::size_t);
template PingPongCertificate fundamental_region_certificate<GeomDataComplex>(const GeomDataComplex&,
                                                                             const BoundaryRegion<Complex>&, Exponent,
                                                                             std::size_t);
template std::vector<Exponent> returning_exponents<GeomDataReal>(const GeomDataReal&, const BoundaryRegion<double>&, Exponent,
                                                                 std::size_t);
template std::vector<Exponent> returning_exponents<GeomDataComplex>(const GeomDataComplex&, const BoundaryRegion<Complex>&,
                                                                    Exponent, std::size_t);

// ---------------------------------------------------------------------------

namespace {

template <typename Scalar>
GroupElement<Scalar> swap_involution(int k) {
  Mat<Scalar> J = Mat<Scalar>::Zero(k + 2, k + 2);
  J(0, k + 1) = J(k + 1, 0) = Scalar(1);
  J(1, 1) = Scalar(-1);
  for (int j = 2; j <= k; ++j) J(j, j) = Scalar(1);
  return GroupElement<Scalar>(J);
}

template <typename Scalar>
std::vector<BoundaryPoint<Scalar>> complement_samples(const BoundaryRegion<Scalar>& ball, double reference_radius,
                                                      std::size_t count) {
  // boundary of the ball plus points of the reference ball outside it, plus infinity
  std::vector<BoundaryPoint<Scalar>> out;
  const auto sphere = ball.samples(2 * (count / 2));
  for (std::size_t i = 0; i < sphere.size(); i += 2) out.push_back(sphere[i]);
  BoundaryRegion<Scalar> big{ball.center, reference_radius, RegionShape::Ball};
  for (const auto& p : big.samples(count))
    if (ball.excess(p) >= 0) out.push_back(p);
  out.push_back(BoundaryPoint<Scalar>::infinity(ball.center.k()));
  return out;
}

}  // namespace

template <typename Scalar>
double contract_margin(const GroupElement<Scalar>& h, const BoundaryRegion<Scalar>& plus, const BoundaryRegion<Scalar>& minus,
                       double reference_radius, std::size_t samples) {
  double m = std::numeric_limits<double>::infinity();
  const auto hi = h.inverse();
  for (const auto& p : complement_samples(minus, reference_radius, samples)) {
    try {
      m = std::min(m, -plus.excess(act(h, p, 1e-6)));
    } catch (const HyplimError&) {
      return -std::numeric_limits<double>::infinity();
    }
  }
  for (const auto& p : complement_samples(plus, reference_radius, samples)) {
    try {
      m = std::min(m, -minus.excess(act(hi, p, 1e-6)));
    } catch (const HyplimError&) {
      return -std::numeric_limits<double>::infinity();
    }
  }
  return m;
}

template <typename Scalar>
SchottkyPartner<Scalar> schottky_partner(const BoundaryRegion<Scalar>& plus, const BoundaryRegion<Scalar>& minus,
                                         double strength, double reference_radius, std::size_t samples) {
  if (plus.shape != RegionShape::Ball || minus.shape != RegionShape::Ball)
    throw std::invalid_argument("schottky_partner: balls required");
  if (plus.center.is_infinity() || minus.center.is_infinity()) throw std::invalid_argument("schottky_partner: finite centers required");
  if (boundary_distance(plus.center, minus.center) <= plus.radius + minus.radius) throw HyplimError("balls intersect");
  const int k = plus.center.k();
  const auto J = swap_involution<Scalar>(k);
  const auto w = heisenberg_mul(heisenberg_inverse(minus.center), plus.center);
  const auto T = unipotent_from_vector(minus.center) * J * unipotent_from_vector(act(J, w)) * J;
  const auto Ti = T.inverse();
  double s = strength > 0 ? strength : 1.0;
  for (int it = 0; it < 40; ++it, s *= 2.0) {
    Mat<Scalar> Dg = Mat<Scalar>::Identity(k + 2, k + 2);
    Dg(0, 0) = Scalar(std::exp(s));
    Dg(k + 1, k + 1) = Scalar(std::exp(-s));
    const auto h = T * GroupElement<Scalar>(Dg) * Ti;
    const double m = contract_margin(h, plus, minus, reference_radius, samples);
    if (m > 0) return {h, s, m, it};
  }
  throw HyplimError("insufficient contraction");
}

template SchottkyPartner<double> schottky_partner<double>(const BoundaryRegion<double>&, const BoundaryRegion<double>&, double,
                                                          double, std::size_t);
template SchottkyPartner<Complex> schottky_partner<Complex>(const BoundaryRegion<Complex>&, const BoundaryRegion<Complex>&,
                                                            double, double, std::size_t);
template double contract_margin<double>(const GroupElement<double>&, const BoundaryRegion<double>&,
                                        const BoundaryRegion<double>&, double, std::size_t);
template double contract_margin<Complex>(const GroupElement<Complex>&, const BoundaryRegion<Complex>&,
                                         const BoundaryRegion<Complex>&, double, std::size_t);
template PolarCoords<double> polar_coords<double>(const BoundaryPoint<double>&, const BoundaryPoint<double>&);
template PolarCoords<Complex> polar_coords<Complex>(const BoundaryPoint<Complex>&, const BoundaryPoint<Complex>&);
template BoundaryPoint<double> from_polar<double>(const PolarCoords<double>&);
template BoundaryPoint<Complex> from_polar<Complex>(const PolarCoords<Complex>&);

// ---------------------------------------------------------------------------

template <typename Data>
PairCertificate<ScalarOf<Data>> FreeGroupFamily<Data>::certify(long long n, Exponent cap, std::size_t samples) const {
  PairCertificate<Scalar> c;
  c.region = fundamental_region_certificate(family.data_at(n), ball, cap, samples);
  c.partner_margin = contract_margin(partner.h, plus, minus, 10.0 * static_cast<double>(n), samples);
  c.containment_margin = std::numeric_limits<double>::infinity();
  for (const auto* b : {&plus, &minus})
    for (const auto& p : b->samples(samples)) c.containment_margin = std::min(c.containment_margin, -ball.excess(p));
  const auto gn = g(n);
  const auto comm = gn * partner.h * gn.inverse() * partner.h.inverse();
  c.commutator_distance = inf_norm<Scalar>(Mat<Scalar>(comm.matrix() - Mat<Scalar>::Identity(gn.k() + 2, gn.k() + 2)));
  c.verdict = c.region.verdict && c.partner_margin > 0 && c.containment_margin > 0;
  return c;
}

template struct FreeGroupFamily<GeomDataReal>;
template struct FreeGroupFamily<GeomDataComplex>;

namespace {

template <typename Data>
FreeGroupFamily<Data> make_free(FamilySpec<Data> f, RegionShape ball_shape) {
  using Scalar = ScalarOf<Data>;
  const int k = f.k;
  const BoundaryRegion<Scalar> ball{BoundaryPoint<Scalar>::origin(k), 1.0 / 3.0, ball_shape};
  Vec<Scalar> e = Vec<Scalar>::Zero(k);
  e(0) = Scalar(0.1);
  const BoundaryRegion<Scalar> plus{BoundaryPoint<Scalar>::finite(e), 1.0 / 50.0, RegionShape::Ball};
  const BoundaryRegion<Scalar> minus{BoundaryPoint<Scalar>::finite(Vec<Scalar>(-e)), 1.0 / 50.0, RegionShape::Ball};
  auto partner = schottky_partner(plus, minus);
  return FreeGroupFamily<Data>{std::move(f), ball, plus, minus, std::move(partner)};
}

}  // namespace

FreeGroupFamily<GeomDataReal> free_group_family_real(int k) { return make_free(jorgensen_real_family(k), RegionShape::Ball); }

FreeGroupFamily<GeomDataComplex> free_group_family_complex(int k) {
  return make_free(jorgensen_complex_family(k), RegionShape::BallInterval);
}

Exponent default_exponent_cap(FieldTag field, int k, long long n) {
  const int e = field == FieldTag::Real ? k / 2 + 1 : k + 1;
  Exponent c = 1;
  for (int i = 0; i < e && c <= 100000; ++i) c *= n;
  return std::min<Exponent>(c, 100000);
}

}  // namespace hyplim
