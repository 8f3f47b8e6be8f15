#include "helpers.hpp"

#include "hyplim/isometry.hpp"
#include "hyplim/lattice.hpp"
#include "hyplim/limits.hpp"

using namespace hyplim;
using testing::max_diff;

TEST_CASE("property: data matrices lie in the group") {
  std::mt19937_64 g(71);
  for (int i = 0; i < 300; ++i) {
    const int k = 2 + i % 7;
    const auto M = matrix_from_data(testing::random_real(g, k));
    CHECK(is_in_group(M));
    CHECK(classify(M).kind == IsometryClass::Kind::Loxodromic);
    CHECK(max_diff<double>(M.inverse().matrix(), M.matrix().inverse()) < 1e-9 * (1.0 + inf_norm<double>(M.matrix())));
  }
  for (int i = 0; i < 300; ++i) {
    const int k = 1 + i % 5;
    const auto M = matrix_from_data(testing::random_complex(g, k));
    CHECK(is_in_group(M));
    CHECK(classify(M).kind == IsometryClass::Kind::Loxodromic);
  }
}

TEST_CASE("property: power_data is a homomorphism") {
  std::mt19937_64 g(72);
  std::uniform_int_distribution<int> e(1, 12);
  for (int i = 0; i < 200; ++i) {
    const auto d = testing::random_real(g, 2 + i % 5);
    const int a = e(g), b = e(g);
    const auto lhs = matrix_from_data(power_data(d, a + b)).matrix();
    const auto rhs = (matrix_from_data(power_data(d, a)) * matrix_from_data(power_data(d, b))).matrix();
    CHECK(max_diff<double>(lhs, rhs) < 1e-8 * (1.0 + lhs.cwiseAbs().maxCoeff()));
    CHECK(power_data(d, a).y == doctest::Approx(a * d.y));
  }
  for (int i = 0; i < 200; ++i) {
    const auto d = testing::random_complex(g, 1 + i % 3);
    const int a = e(g), b = e(g);
    const auto lhs = matrix_from_data(power_data(d, a + b)).matrix();
    const auto rhs = (matrix_from_data(power_data(d, a)) * matrix_from_data(power_data(d, b))).matrix();
    CHECK(max_diff<Complex>(lhs, rhs) < 1e-8 * (1.0 + lhs.cwiseAbs().maxCoeff()));
  }
}

TEST_CASE("property: huge exponents stay exact on rational angles") {
  // theta = 2 pi / 2^j, m = 2^60 + r: only r survives
  for (int j = 1; j <= 20; ++j) {
    GeomDataReal d;
    d.x = Eigen::Vector2d(0.0, 1.0);
    d.y = 1e-20;
    d.theta = {Angle::from_turns(std::ldexp(1.0, -j))};
    for (int r : {1, 3, 7}) {
      const auto p = power_data(d, checked_pow(2, 60) + r);
      CHECK(std::abs(std::remainder(p.theta[0].turns() - r * std::ldexp(1.0, -j), 1.0)) < 1e-15);
    }
  }
}

TEST_CASE("property: fixed points are fixed") {
  std::mt19937_64 g(73);
  for (int i = 0; i < 100; ++i) {
    const auto d = testing::random_real(g, 2 + i % 4);
    const auto M = matrix_from_data(d);
    const auto fp = fixed_points(M);
    CHECK(fp.attracting.is_infinity());
    const auto x = repelling_point(d);
    CHECK((fp.repelling.a() - x.a()).norm() < 1e-8 * (1.0 + x.a().norm()));
    CHECK((act(M, x).a() - x.a()).norm() < 1e-8 * (1.0 + x.a().norm()));
  }
}

TEST_CASE("property: unipotent limits fix only infinity") {
  std::mt19937_64 g(74);
  std::normal_distribution<double> nd;
  for (int i = 0; i < 100; ++i) {
    const int k = 2 + i % 4;
    Eigen::VectorXd v(k), a(k);
    for (int j = 0; j < k; ++j) {
      v(j) = nd(g);
      a(j) = nd(g);
    }
    const auto u = UnipotentLimit<double>::from_vector(v).element();
    CHECK(is_in_group(u));
    CHECK(act(u, BoundaryPoint<double>::infinity(k)).is_infinity());
    const auto p = BoundaryPoint<double>::finite(a);
    CHECK((act(u, p).a() - a - v).norm() < 1e-10 * (1.0 + a.norm() + v.norm()));
  }
}

TEST_CASE("property: translation length scales with powers") {
  std::mt19937_64 g(75);
  for (int i = 0; i < 100; ++i) {
    const auto d = testing::random_complex(g, 1 + i % 3);
    const auto M = matrix_from_data(d);
    CHECK(translation_length(M.pow(3)) == doctest::Approx(3.0 * translation_length(M)).epsilon(1e-7));
  }
}

TEST_CASE("property: predicate and numeric oracle agree on random families") {
  std::mt19937_64 g(76);
  std::uniform_real_distribution<double> u(0.5, 2.0);
  const auto probes = default_probes(8, 16);
  for (int i = 0; i < 12; ++i) {
    const double a = u(g), b = u(g), c = u(g);
    const bool convergent = i % 2 == 0;
    RealFamily f;
    f.k = 2;
    f.description = "random";
    f.data_at = [a, b, c, convergent](long long n) {
      const double x = static_cast<double>(n);
      GeomDataReal d;
      d.x = Eigen::Vector2d(0.0, a * x);
      d.y = b / x;
      d.theta = {Angle::from_radians(c / (convergent ? x : std::sqrt(x)))};
      return d;
    };
    const auto pr = check_convergence_real(f, probes);
    const auto nl = numeric_limit(f, Schedule::constant(1), probes);
    CHECK(pr.converges == convergent);
    CHECK(nl.converged == convergent);
    if (pr.converges && nl.converged) {
      CHECK(max_diff<double>(pr.limit.element().matrix(), nl.extrapolated) < 1e-4);
      CHECK((pr.limit.v - Eigen::Vector2d(-a * c, -a * b)).norm() < 1e-6);
    }
  }
}

TEST_CASE("property: shortest vector matches brute force") {
  std::mt19937_64 g(77);
  std::uniform_int_distribution<int> e(-5, 5);
  for (int i = 0; i < 30; ++i) {
    Eigen::MatrixXd G(2, 2);
    for (int r = 0; r < 2; ++r)
      for (int s = 0; s < 2; ++s) G(r, s) = e(g);
    if (std::abs(G.determinant()) < 0.5) continue;
    double best = std::numeric_limits<double>::infinity();
    for (int p = -8; p <= 8; ++p)
      for (int q = -8; q <= 8; ++q)
        if (p || q) best = std::min(best, (G * Eigen::Vector2d(p, q)).norm());
    CHECK(shortest_vector(G).norm == doctest::Approx(best));
  }
}
