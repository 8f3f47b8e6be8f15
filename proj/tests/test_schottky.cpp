#include "helpers.hpp"

#include "hyplim/families.hpp"
#include "hyplim/isometry.hpp"
#include "hyplim/schottky.hpp"

using namespace hyplim;
using testing::max_diff;

TEST_CASE("polar coordinates: examples") {
  const auto c = BoundaryPoint<double>::finite(Eigen::Vector2d(0, 64));
  const auto pc = polar_coords(BoundaryPoint<double>::origin(2), c);
  REQUIRE(pc.radii.size() == 1);
  CHECK(pc.radii[0] == doctest::Approx(64.0));
  CHECK(pc.angles[0] == doctest::Approx(-kPi));
  const auto self = polar_coords(c, c);
  CHECK(self.radii[0] == 0.0);
  const auto c3 = BoundaryPoint<double>::finite(Eigen::Vector3d(1, 2, 3));
  const auto p3 = polar_coords(BoundaryPoint<double>::finite(Eigen::Vector3d(1, 2, 1)), c3);
  REQUIRE(p3.radii.size() == 2);
  CHECK(p3.radii[1] == doctest::Approx(2.0));
  CHECK(p3.angles[1] == doctest::Approx(-kPi));
}

TEST_CASE("polar coordinates: round trip") {
  std::mt19937_64 g(51);
  std::normal_distribution<double> nd(0.0, 3.0);
  for (int i = 0; i < 1000; ++i) {
    const int k = 2 + i % 4;
    Eigen::VectorXd a(k), b(k);
    for (int j = 0; j < k; ++j) {
      a(j) = nd(g);
      b(j) = nd(g);
    }
    const auto p = BoundaryPoint<double>::finite(a), c = BoundaryPoint<double>::finite(b);
    const auto pc = polar_coords(p, c);
    for (double r : pc.radii)
      if (static_cast<int>(pc.radii.size()) == k / 2) CHECK(r >= 0.0);
    for (double t : pc.angles) CHECK((t >= -kPi && t < kPi));
    CHECK((from_polar(pc).a() - a).norm() < 1e-10 * (1.0 + a.norm()));
  }
  for (int i = 0; i < 1000; ++i) {
    const int k = 1 + i % 3;
    Eigen::VectorXcd a(k), b(k);
    for (int j = 0; j < k; ++j) {
      a(j) = Complex(nd(g), nd(g));
      b(j) = Complex(nd(g), nd(g));
    }
    const auto p = BoundaryPoint<Complex>::finite(a, nd(g)), c = BoundaryPoint<Complex>::finite(b, nd(g));
    const auto q = from_polar(polar_coords(p, c));
    CHECK((q.a() - a).norm() < 1e-10 * (1.0 + a.norm()));
    CHECK(std::abs(q.b() - p.b()) < 1e-10 * (1.0 + a.squaredNorm() + std::abs(p.b())));
  }
}

TEST_CASE("polar action is equivariant") {
  std::mt19937_64 g(52);
  std::normal_distribution<double> nd;
  for (int i = 0; i < 100; ++i) {
    const int k = 2 + i % 4;
    const auto d = testing::random_real(g, k);
    const auto x = repelling_point(d);
    Eigen::VectorXd a(k);
    for (int j = 0; j < k; ++j) a(j) = nd(g);
    const auto p = BoundaryPoint<double>::finite(a);
    for (int N : {1, 2, -1, 5}) {
      const auto lhs = from_polar(polar_action(d, N, polar_coords(p, x)));
      const auto rhs = act(matrix_from_data(d).pow(N), p);
      CHECK((lhs.a() - rhs.a()).norm() < 1e-9 * (1.0 + rhs.a().norm()));
    }
    // radii scale by e^{N y}, angles shift by N theta
    const auto pc = polar_coords(p, x);
    const auto img = polar_action(d, 1, pc);
    for (std::size_t j = 0; j < d.theta.size(); ++j) {
      CHECK(img.radii[j] == doctest::Approx(pc.radii[j] * std::exp(d.y)).epsilon(1e-10));
      CHECK(std::remainder(img.angles[j] - pc.angles[j] - d.theta[j].radians(), kTwoPi) == doctest::Approx(0.0).epsilon(1e-9));
    }
  }
  for (int i = 0; i < 50; ++i) {
    const int k = 1 + i % 3;
    const auto d = testing::random_complex(g, k);
    const auto x = repelling_point(d);
    Eigen::VectorXcd a(k);
    for (int j = 0; j < k; ++j) a(j) = Complex(nd(g), nd(g));
    const auto p = BoundaryPoint<Complex>::finite(a, nd(g));
    for (int N : {1, 3, -2}) {
      const auto lhs = from_polar(polar_action(d, N, polar_coords(p, x)));
      const auto rhs = act(matrix_from_data(d).pow(N), p);
      CHECK((lhs.a() - rhs.a()).norm() < 1e-8 * (1.0 + rhs.a().norm()));
      CHECK(std::abs(lhs.b() - rhs.b()) < 1e-8 * (1.0 + std::abs(rhs.b()) + rhs.a().squaredNorm()));
    }
  }
}

TEST_CASE("region excess and samples") {
  const BoundaryRegion<double> ball{BoundaryPoint<double>::origin(2), 1.0, RegionShape::Ball};
  CHECK(ball.excess(BoundaryPoint<double>::origin(2)) <= 0.0);
  CHECK(ball.excess(BoundaryPoint<double>::finite(Eigen::Vector2d(2, 0))) > 0.0);
  CHECK(std::isinf(ball.excess(BoundaryPoint<double>::infinity(2))));
  const auto s = ball.samples(200);
  CHECK(s.size() == 200);
  for (const auto& p : s) CHECK(ball.excess(p) <= 1e-12);
  const auto again = ball.samples(200);
  CHECK((again[17].a() - s[17].a()).norm() == 0.0);
}

TEST_CASE("fundamental region certificates") {
  const auto d = jorgensen_real_family(2).data_at(64);
  const BoundaryRegion<double> third{BoundaryPoint<double>::origin(2), 1.0 / 3.0, RegionShape::Ball};
  const auto ok = fundamental_region_certificate(d, third, 64 * 64);
  CHECK(ok.verdict);
  CHECK(ok.margin > 0.0);
  CHECK(ok.samples >= 1000);
  const BoundaryRegion<double> huge{BoundaryPoint<double>::origin(2), 128.0, RegionShape::Ball};
  CHECK_FALSE(fundamental_region_certificate(d, huge, 16).verdict);
  CHECK_THROWS(fundamental_region_certificate(d, third, 0));

  const auto dc = jorgensen_complex_family(1).data_at(64);
  const BoundaryRegion<Complex> slab{BoundaryPoint<Complex>::origin(1), 1.0 / 3.0, RegionShape::BallInterval};
  CHECK(fundamental_region_certificate(dc, slab, 64 * 64).verdict);
}

TEST_CASE("returning exponents are multiples of n") {
  const long long n = 32;
  const auto d = jorgensen_real_family(2).data_at(n);
  const BoundaryRegion<double> big{BoundaryPoint<double>::origin(2), 1.5, RegionShape::Ball};
  const auto ex = returning_exponents(d, big, n * n, 300);
  CHECK_FALSE(ex.empty());
  for (Exponent N : ex) CHECK(N % n == 0);
}

TEST_CASE("Schottky partner") {
  Eigen::VectorXd c(2);
  c << 0.1, 0;
  const BoundaryRegion<double> plus{BoundaryPoint<double>::finite(c), 1.0 / 50, RegionShape::Ball};
  const BoundaryRegion<double> minus{BoundaryPoint<double>::finite(Eigen::VectorXd(-c)), 1.0 / 50, RegionShape::Ball};
  const auto h = schottky_partner(plus, minus);
  CHECK(h.margin > 0.0);
  CHECK(classify(h.h).hyperbolic);
  CHECK(translation_length(h.h) == doctest::Approx(h.strength).epsilon(1e-8));
  const auto fp = fixed_points(h.h);
  CHECK((fp.attracting.a() - c).norm() < 1e-8);
  CHECK((fp.repelling.a() + c).norm() < 1e-8);
  CHECK(contract_margin(h.h, plus, minus, 10.0, 500) > 0.0);
  const BoundaryRegion<double> wide{BoundaryPoint<double>::finite(Eigen::VectorXd(-c)), 0.19, RegionShape::Ball};
  CHECK_THROWS(schottky_partner(plus, wide));
}

TEST_CASE("free group families") {
  const auto fam = free_group_family_real(2);
  const long long n = 64;
  CHECK(max_diff<double>(fam.g(n).matrix(), matrix_from_data(jorgensen_real_family(2).data_at(n)).matrix()) == 0.0);
  const auto cert = fam.certify(n, default_exponent_cap(FieldTag::Real, 2, n), 1000);
  CHECK(cert.verdict);
  CHECK(cert.commutator_distance >= 0.1);
  const auto famc = free_group_family_complex(1);
  const auto cc = famc.certify(n, default_exponent_cap(FieldTag::Complex, 1, n), 1000);
  CHECK(cc.verdict);
  CHECK(default_exponent_cap(FieldTag::Real, 2, 64) == 64 * 64);
  CHECK(default_exponent_cap(FieldTag::Complex, 3, 64) == 100000);
}
