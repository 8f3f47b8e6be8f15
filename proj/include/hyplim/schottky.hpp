#pragma once

#include <string>
#include <vector>

#include "hyplim/families.hpp"
#include "hyplim/geomdata.hpp"

namespace hyplim {

// Real case: pairs (2i-1, 2i) of p - center written as r (sin t, cos t), t in [-pi, pi);
// a trailing odd coordinate is a signed radius with angle 0 or -pi.
// Complex case: q = center^{-1} p in Heis_k, q.a_j = r_j e^{i t_j}, height = q.b.
template <typename Scalar>
struct PolarCoords {
  std::vector<double> radii;
  std::vector<double> angles;
  double height = 0.0;
  BoundaryPoint<Scalar> center;
};

template <typename Scalar>
PolarCoords<Scalar> polar_coords(const BoundaryPoint<Scalar>& p, const BoundaryPoint<Scalar>& center);
template <typename Scalar>
BoundaryPoint<Scalar> from_polar(const PolarCoords<Scalar>& pc);

// Image of polar coordinates centered at the repelling point under the N-th power.
PolarCoords<double> polar_action(const GeomDataReal& d, Exponent N, const PolarCoords<double>& pc);
PolarCoords<Complex> polar_action(const GeomDataComplex& d, Exponent N, const PolarCoords<Complex>& pc);

enum class RegionShape { Ball, BallInterval };

// Ball: Euclidean (real) or Cygan (complex) ball.  BallInterval: |a| <= R and |b| <= R after
// translating the center to the origin.
template <typename Scalar>
struct BoundaryRegion {
  BoundaryPoint<Scalar> center;
  double radius = 0.0;
  RegionShape shape = RegionShape::Ball;

  // Positive outside, nonpositive inside; +inf at infinity.
  double excess(const BoundaryPoint<Scalar>& p) const;
  // Deterministic Halton samples: half on the boundary, half inside.
  std::vector<BoundaryPoint<Scalar>> samples(std::size_t count) const;
};

struct PingPongCertificate {
  bool verdict = false;
  double margin = 0.0;  // min excess of g^N(sample) outside the region
  Exponent cap = 0;     // every 1 <= |N| <= cap was checked
  std::size_t samples = 0;
  Exponent worst_exponent = 0;
};

template <typename Data>
PingPongCertificate fundamental_region_certificate(const Data& d, const BoundaryRegion<ScalarOf<Data>>& region, Exponent cap,
                                                   std::size_t samples = 1000);

// Exponents 1 <= N <= cap for which some sampled point of the region is mapped back into it.
template <typename Data>
std::vector<Exponent> returning_exponents(const Data& d, const BoundaryRegion<ScalarOf<Data>>& region, Exponent cap,
                                          std::size_t samples = 1000);

template <typename Scalar>
struct SchottkyPartner {
  GroupElement<Scalar> h;
  double strength = 0.0;
  double margin = 0.0;  // min over samples of both contracts h(B-^c) in B+, h^{-1}(B+^c) in B-
  int doublings = 0;
};

// Hyperbolic element with attracting point at plus.center and repelling point at minus.center.
// strength <= 0 starts the automatic search at 1.
template <typename Scalar>
SchottkyPartner<Scalar> schottky_partner(const BoundaryRegion<Scalar>& plus, const BoundaryRegion<Scalar>& minus,
                                         double strength = 0.0, double reference_radius = 10.0, std::size_t samples = 1000);

template <typename Scalar>
double contract_margin(const GroupElement<Scalar>& h, const BoundaryRegion<Scalar>& plus, const BoundaryRegion<Scalar>& minus,
                       double reference_radius, std::size_t samples);

template <typename Scalar>
struct PairCertificate {
  PingPongCertificate region;
  double partner_margin = 0.0;
  double containment_margin = 0.0;  // B+ and B- inside the fundamental ball
  double commutator_distance = 0.0;
  bool verdict = false;
};

template <typename Data>
struct FreeGroupFamily {
  using Scalar = ScalarOf<Data>;
  FamilySpec<Data> family;
  BoundaryRegion<Scalar> ball;
  BoundaryRegion<Scalar> plus;
  BoundaryRegion<Scalar> minus;
  SchottkyPartner<Scalar> partner;

  GroupElement<Scalar> g(long long n) const { return matrix_from_data(family.data_at(n)); }
  PairCertificate<Scalar> certify(long long n, Exponent cap, std::size_t samples = 1000) const;
};

FreeGroupFamily<GeomDataReal> free_group_family_real(int k);
FreeGroupFamily<GeomDataComplex> free_group_family_complex(int k);

// min(n^{l+1}, 1e5) in the real case, min(n^{k+1}, 1e5) in the complex case.
Exponent default_exponent_cap(FieldTag field, int k, long long n);

}  // namespace hyplim
