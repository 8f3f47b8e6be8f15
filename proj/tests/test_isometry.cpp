#include "helpers.hpp"

#include "hyplim/isometry.hpp"

using namespace hyplim;
using testing::max_diff;

namespace {

GroupElement<double> hyperbolic_diag(int k, double lam) {
  Eigen::MatrixXd D = Eigen::MatrixXd::Identity(k + 2, k + 2);
  D(0, 0) = lam;
  D(k + 1, k + 1) = 1.0 / lam;
  return GroupElement<double>(D);
}

}  // namespace

TEST_CASE("classification examples") {
  const auto h = classify(hyperbolic_diag(2, 2.0));
  CHECK(h.kind == IsometryClass::Kind::Loxodromic);
  CHECK(h.hyperbolic);
  Eigen::VectorXd a(3);
  a << 0.5, 0, -1;
  const auto p = classify(unipotent_from_vector(BoundaryPoint<double>::finite(a)));
  CHECK(p.kind == IsometryClass::Kind::Parabolic);
  CHECK(p.unipotent);
  Eigen::MatrixXd E = Eigen::MatrixXd::Identity(4, 4);
  const double c = std::cos(kPi / 3), s = std::sin(kPi / 3);
  E.block(1, 1, 2, 2) << c, s, -s, c;
  CHECK(classify(GroupElement<double>(E)).kind == IsometryClass::Kind::Elliptic);
  CHECK(classify(GroupElement<double>::identity(2)).kind == IsometryClass::Kind::Identity);
  Eigen::MatrixXd L = hyperbolic_diag(2, 2.0).matrix() * E;
  const auto l = classify(GroupElement<double>(L));
  CHECK(l.kind == IsometryClass::Kind::Loxodromic);
  CHECK_FALSE(l.hyperbolic);
  CHECK(l.name() == "loxodromic");
}

TEST_CASE("complex classification") {
  Eigen::MatrixXcd D = Eigen::MatrixXcd::Identity(3, 3);
  D(0, 0) = 2.0 * std::polar(1.0, 0.3);
  D(1, 1) = std::polar(1.0, -0.6);
  D(2, 2) = 0.5 * std::polar(1.0, 0.3);
  CHECK(classify(GroupElement<Complex>(D)).kind == IsometryClass::Kind::Loxodromic);
  const auto u = unipotent_from_vector(BoundaryPoint<Complex>::finite(Eigen::VectorXcd::Zero(1), 1.0));
  CHECK(classify(u).kind == IsometryClass::Kind::Parabolic);
  CHECK(classify(u).unipotent);
}

TEST_CASE("fixed points") {
  const auto fp = fixed_points(hyperbolic_diag(2, 2.0));
  CHECK(fp.attracting.is_infinity());
  CHECK(fp.repelling.a().norm() < 1e-12);
  Eigen::VectorXd a(2);
  a << 0.7, -0.2;
  const auto u = unipotent_from_vector(BoundaryPoint<double>::finite(a));
  const auto g = u * hyperbolic_diag(2, 2.0) * u.inverse();
  const auto f2 = fixed_points(g);
  CHECK(f2.attracting.is_infinity());
  CHECK((f2.repelling.a() - a).norm() < 1e-9);
  CHECK_THROWS(fixed_points(GroupElement<double>::identity(2)));
}

TEST_CASE("translation length") {
  CHECK(translation_length(hyperbolic_diag(3, std::exp(1.0))) == doctest::Approx(1.0).epsilon(1e-12));
  Eigen::VectorXd a(2);
  a << 1, 1;
  CHECK(translation_length(unipotent_from_vector(BoundaryPoint<double>::finite(a))) == doctest::Approx(0.0));
  std::mt19937_64 rng(21);
  for (int i = 0; i < 20; ++i) {
    const auto d = testing::random_real(rng, 3);
    const auto g = matrix_from_data(d);
    CHECK(translation_length(g * g) == doctest::Approx(2.0 * translation_length(g)).epsilon(1e-8));
    CHECK(translation_length(g) == doctest::Approx(d.y).epsilon(1e-8));
  }
}

TEST_CASE("Jordan decomposition") {
  Eigen::MatrixXd E = Eigen::MatrixXd::Identity(4, 4);
  const double c = std::cos(0.4), s = std::sin(0.4);
  E.block(1, 1, 2, 2) << c, s, -s, c;
  const GroupElement<double> g(hyperbolic_diag(2, 2.0).matrix() * E);
  const auto [h, e] = jordan_decompose(g);
  CHECK(max_diff<double>(h.matrix(), hyperbolic_diag(2, 2.0).matrix()) < 1e-9);
  CHECK(max_diff<double>(e.matrix(), E) < 1e-9);
  const auto [h2, e2] = jordan_decompose(hyperbolic_diag(2, 3.0));
  CHECK(max_diff<double>(e2.matrix(), Eigen::MatrixXd::Identity(4, 4)) < 1e-9);
  std::mt19937_64 rng(22);
  for (int i = 0; i < 20; ++i) {
    const auto gg = matrix_from_data(testing::random_real(rng, 4));
    const auto [hh, ee] = jordan_decompose(gg);
    CHECK(max_diff<double>((hh * ee).matrix(), gg.matrix()) < 1e-9);
    CHECK(max_diff<double>((hh * ee).matrix(), (ee * hh).matrix()) < 1e-9);
    CHECK(classify(ee).kind != IsometryClass::Kind::Loxodromic);
  }
}

TEST_CASE("spectrum is sorted by modulus") {
  const auto sp = spectrum(hyperbolic_diag(2, 2.0));
  REQUIRE(sp.size() == 4);
  CHECK(std::abs(sp.front()) == doctest::Approx(2.0));
  CHECK(std::abs(sp.back()) == doctest::Approx(0.5));
}
