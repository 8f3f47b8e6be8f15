#include "helpers.hpp"

#include <cmath>

#include "hyplim/isometry.hpp"

using namespace hyplim;
using testing::max_diff;

namespace {

GeomDataReal real_data(std::initializer_list<double> x, double y, std::initializer_list<double> theta) {
  GeomDataReal d;
  d.x = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(x.size()));
  Eigen::Index i = 0;
  for (double v : x) d.x(i++) = v;
  d.y = y;
  for (double t : theta) d.theta.push_back(Angle::from_radians(t));
  return d;
}

// Generic group element: a product of loxodromic and unipotent pieces.
GroupElement<double> random_conjugator(std::mt19937_64& g, int k) {
  std::normal_distribution<double> nd;
  Eigen::VectorXd a(k);
  for (int i = 0; i < k; ++i) a(i) = nd(g);
  return matrix_from_data(testing::random_real(g, k)) * unipotent_from_vector(BoundaryPoint<double>::finite(a));
}

GroupElement<Complex> random_conjugator_c(std::mt19937_64& g, int k) {
  std::normal_distribution<double> nd;
  Eigen::VectorXcd a(k);
  for (int i = 0; i < k; ++i) a(i) = Complex(nd(g), nd(g));
  return matrix_from_data(testing::random_complex(g, k)) * unipotent_from_vector(BoundaryPoint<Complex>::finite(a, nd(g)));
}

}  // namespace

TEST_CASE("Angle reduction and exact multiples") {
  CHECK(Angle::from_turns(0.75).turns() == doctest::Approx(-0.25));
  CHECK(Angle::from_turns(0.5).turns() == doctest::Approx(0.5));
  CHECK(Angle::from_turns(-0.5).turns() == doctest::Approx(0.5));
  CHECK(Angle::from_radians(3 * kPi).radians() == doctest::Approx(kPi));
  const Angle a = Angle::from_turns(1.0 / 1024.0);
  CHECK(a.times(1024).turns() == doctest::Approx(0.0));
  CHECK(a.times(512).turns() == doctest::Approx(0.5));
  const Exponent big = checked_pow(2, 60);
  CHECK(std::abs(a.times(big + 3).turns() - 3.0 / 1024.0) < 1e-15);
}

TEST_CASE("rotation matrices") {
  const auto R = rotation_matrix_real({Angle::from_radians(kPi / 2)}, 2);
  CHECK(max_diff<double>(R, testing::rows_real({{0, 1}, {-1, 0}})) < 1e-15);
  const auto R3 = rotation_matrix_real({Angle::from_radians(kPi)}, 3);
  CHECK(max_diff<double>(R3, testing::rows_real({{-1, 0, 0}, {0, -1, 0}, {0, 0, 1}})) < 1e-15);
  CHECK_THROWS_AS(rotation_matrix_real({}, 2), std::invalid_argument);
}

TEST_CASE("real matrix from data") {
  const auto M = matrix_from_data(real_data({0, 1}, std::log(2.0), {0.0}));
  const Eigen::MatrixXd E = testing::rows_real({{2, 0, -1, 0.25}, {0, 1, 0, 0}, {0, 0, 1, -0.5}, {0, 0, 0, 0.5}});
  CHECK(max_diff<double>(M.matrix(), E) < 1e-14);
  CHECK(is_in_group(M));
}

TEST_CASE("complex matrix from data") {
  const auto d = GeomDataComplex::make(Eigen::VectorXcd::Zero(1), 1.0, std::log(2.0), {Angle()});
  const auto M = matrix_from_data(d);
  Eigen::MatrixXcd E = Eigen::MatrixXcd::Zero(3, 3);
  E(0, 0) = 2.0;
  E(0, 2) = Complex(0, -1.5);
  E(1, 1) = 1.0;
  E(2, 2) = 0.5;
  CHECK(max_diff<Complex>(M.matrix(), E) < 1e-14);
  CHECK(is_in_group(M));
}

TEST_CASE("data validation") {
  auto d = real_data({0, 1}, 0.0, {0.0});
  CHECK_THROWS_AS(d.validate(), std::invalid_argument);
  auto e = real_data({0, 1}, 1.0, {});
  CHECK_THROWS_AS(e.validate(), std::invalid_argument);
  CHECK_THROWS_AS(GeomDataComplex::make(Eigen::VectorXcd::Zero(2), 0.0, 1.0, {Angle()}), std::invalid_argument);
}

TEST_CASE("power_data agrees with matrix powers") {
  std::mt19937_64 g(31);
  for (int k = 2; k <= 5; ++k) {
    const auto d = testing::random_real(g, k);
    for (int m : {1, 2, 3, 7}) {
      const auto lhs = matrix_from_data(power_data(d, m)).matrix();
      const auto rhs = matrix_from_data(d).pow(m).matrix();
      CHECK(max_diff<double>(lhs, rhs) < 1e-9 * (1.0 + rhs.cwiseAbs().maxCoeff()));
    }
    CHECK_THROWS_AS(power_data(d, 0), HyplimError);
    CHECK_THROWS_AS(power_data(d, -1), HyplimError);
  }
  for (int k = 1; k <= 3; ++k) {
    const auto d = testing::random_complex(g, k);
    for (int m : {1, 2, 5}) {
      const auto lhs = matrix_from_data(power_data(d, m)).matrix();
      const auto rhs = matrix_from_data(d).pow(m).matrix();
      CHECK(max_diff<Complex>(lhs, rhs) < 1e-9 * (1.0 + rhs.cwiseAbs().maxCoeff()));
    }
    CHECK_THROWS_AS(power_data(d, 0), HyplimError);
  }
}

TEST_CASE("data_from_matrix reads back") {
  Eigen::MatrixXd D = Eigen::MatrixXd::Identity(4, 4);
  D(0, 0) = 2.0;
  D(3, 3) = 0.5;
  const auto d = data_from_matrix(GroupElement<double>(D));
  CHECK(d.x.norm() == 0.0);
  CHECK(d.y == doctest::Approx(std::log(2.0)));
  CHECK(d.theta.at(0).turns() == 0.0);
  std::mt19937_64 g(32);
  for (int i = 0; i < 30; ++i) {
    const auto r = testing::random_real(g, 3);
    const auto back = data_from_matrix(matrix_from_data(r));
    CHECK((back.x - r.x).norm() < 1e-10);
    CHECK(back.y == doctest::Approx(r.y));
    CHECK(std::abs(back.theta[0].turns() - r.theta[0].turns()) < 1e-10);
    const auto c = testing::random_complex(g, 2);
    const auto cb = data_from_matrix(matrix_from_data(c));
    CHECK((cb.x - c.x).norm() < 1e-10);
    CHECK(cb.t == doctest::Approx(c.t));
    CHECK(cb.y == doctest::Approx(c.y));
  }
  const auto u = unipotent_from_vector(BoundaryPoint<double>::finite(Eigen::Vector2d(1, 0)));
  CHECK_THROWS_AS(data_from_matrix(u), HyplimError);
}

TEST_CASE("well_position conjugates to the data matrix") {
  std::mt19937_64 g(33);
  for (int k = 2; k <= 5; ++k) {
    for (int i = 0; i < 10; ++i) {
      const auto d = testing::random_real(g, k);
      const auto c = random_conjugator(g, k);
      const auto h = c * matrix_from_data(d) * c.inverse();
      const auto wp = well_position(h);
      const auto lhs = (wp.conjugator * h * wp.conjugator.inverse()).matrix();
      const auto rhs = matrix_from_data(wp.data).matrix();
      CHECK(max_diff<double>(lhs, rhs) < 1e-6 * (1.0 + rhs.cwiseAbs().maxCoeff()));
      CHECK(wp.data.y == doctest::Approx(d.y).epsilon(1e-8));
    }
  }
  for (int k = 1; k <= 3; ++k) {
    for (int i = 0; i < 10; ++i) {
      const auto d = testing::random_complex(g, k);
      const auto c = random_conjugator_c(g, k);
      const auto h = c * matrix_from_data(d) * c.inverse();
      const auto wp = well_position(h);
      const auto lhs = (wp.conjugator * h * wp.conjugator.inverse()).matrix();
      const auto rhs = matrix_from_data(wp.data).matrix();
      CHECK(max_diff<Complex>(lhs, rhs) < 1e-6 * (1.0 + rhs.cwiseAbs().maxCoeff()));
      CHECK(wp.data.y == doctest::Approx(d.y).epsilon(1e-8));
    }
  }
  CHECK_THROWS_AS(well_position(GroupElement<double>::identity(2)), HyplimError);
}

TEST_CASE("power_action matches matrix action") {
  std::mt19937_64 g(34);
  std::normal_distribution<double> nd;
  for (int i = 0; i < 20; ++i) {
    const auto d = testing::random_real(g, 4);
    Eigen::VectorXd a(4);
    for (int j = 0; j < 4; ++j) a(j) = nd(g);
    const auto p = BoundaryPoint<double>::finite(a);
    for (int N : {-3, -1, 1, 4}) {
      const auto q = power_action(d, N, p);
      const auto r = act(matrix_from_data(d).pow(N), p);
      REQUIRE_FALSE(q.is_infinity());
      CHECK((q.a() - r.a()).norm() < 1e-8 * (1.0 + r.a().norm()));
    }
  }
  const auto d = testing::random_real(g, 2);
  CHECK(power_action(d, 5, BoundaryPoint<double>::infinity(2)).is_infinity());
  const auto x = repelling_point(d);
  CHECK((power_action(d, 7, x).a() - x.a()).norm() < 1e-10);
}
