#include "helpers.hpp"

#include "hyplim/families.hpp"
#include "hyplim/lattice.hpp"
#include "hyplim/rational.hpp"

using namespace hyplim;
using testing::max_diff;

TEST_CASE("classic element: determinant and trace") {
  for (long long n = 1; n <= 100; ++n) {
    const auto g = jorgensen_classic(n);
    CHECK(std::abs(g.M.determinant() - 1.0) < 1e-12);
  }
  for (long long n : {1LL, 10LL, 1000LL, 10000LL}) {
    const auto g = jorgensen_classic(n);
    CHECK(std::abs(g.M.trace() - 2.0 * std::cosh(jorgensen_omega(n))) < 1e-12);
  }
  CHECK(std::abs(jorgensen_omega(4) - Complex(1.0 / 16, kPi / 4)) < 1e-15);
}

TEST_CASE("classic element: limits") {
  const long long n = 100000;
  const auto g = jorgensen_classic(n).M;
  Eigen::Matrix2cd E;
  E << 1, Complex(0, kPi), 0, 1;
  CHECK((g - E).cwiseAbs().maxCoeff() < 1e-4);
  const Eigen::Matrix2cd gn = jorgensen_classic_power(n, n);
  Eigen::Matrix2cd P;
  P << 1, 1, 0, 1;
  const double err = std::min((gn - P).cwiseAbs().maxCoeff(), (gn + P).cwiseAbs().maxCoeff());
  CHECK(err < 1e-4);
  const Eigen::Matrix2cd g3 = jorgensen_classic_power(7, 3);
  const Eigen::Matrix2cd direct = jorgensen_classic(7).M * jorgensen_classic(7).M * jorgensen_classic(7).M;
  CHECK((g3 - direct).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("real built-in family data") {
  for (int k = 2; k <= 6; ++k) {
    const int l = k / 2;
    const auto f = jorgensen_real_family(k);
    CHECK(f.k == k);
    CHECK(static_cast<int>(f.schedules.size()) == l + 1);
    const long long n = 10;
    const auto d = f.data_at(n);
    CHECK(d.y == doctest::Approx(std::pow(10.0, -(l + 1))));
    for (int j = 0; j < l; ++j) {
      CHECK(d.x(2 * j) == 0.0);
      CHECK(d.x(2 * j + 1) == 10.0);
      CHECK(d.theta[j].radians() == doctest::Approx(kTwoPi / std::pow(10.0, j + 1)));
    }
    if (k % 2 == 1) CHECK(d.x(k - 1) == 0.0);
  }
}

TEST_CASE("complex built-in family data") {
  for (int k = 1; k <= 4; ++k) {
    const auto f = jorgensen_complex_family(k);
    const long long n = 8;
    const auto d = f.data_at(n);
    CHECK(d.y == doctest::Approx(std::pow(8.0, -(k + 2))));
    CHECK(d.t == 0.0);
    for (int j = 0; j < k; ++j) CHECK(std::abs(d.x(j) - 8.0) < 1e-15);
    Angle sum;
    for (const auto& t : d.theta) sum = sum + t;
    CHECK(std::abs((sum + d.phase + d.phase).turns()) < 1e-15);
    CHECK(d.phase.radians() == doctest::Approx(-kPi / std::pow(8.0, k + 1)));
    CHECK(static_cast<int>(f.schedules.size()) == k + 1);
  }
}

TEST_CASE("continued fractions") {
  const auto den = convergent_denominators(default_irrational_angle() / kTwoPi, 10);
  REQUIRE(den.size() >= 8);
  for (size_t i = 2; i < den.size(); ++i) CHECK(den[i] == den[i - 1] + den[i - 2]);
  CHECK_THROWS(convergent_denominators(0.25));
  CHECK_THROWS(convergent_denominators(3.0 / 7.0));
}

TEST_CASE("rotation exponent") {
  const double eps = 1e-3;
  const Exponent m = rotation_exponent(eps, 1.0);
  CHECK(m == 1000);
  CHECK(rotation_exponent(-1e-3, 1.0) == static_cast<Exponent>(std::llround((1.0 - kTwoPi) / -1e-3)));
  CHECK(rotation_exponent(1e-3, 1e-6) == 1);
  CHECK_THROWS(rotation_exponent(0.0, 1.0));
}

TEST_CASE("non-faithful example: identity limit, rotation witnesses") {
  const auto f = counterexample_family(Counterexample::NonFaithful, 2);
  const auto M = matrix_from_data(f.data_at(20)).matrix();
  CHECK(max_diff<double>(M, Eigen::MatrixXd::Identity(4, 4)) < 1e-3);
  const auto d = f.data_at(20);
  const double target = 1.0;
  const auto p = power_data(d, rotation_exponent(d.theta[0].radians(), target));
  CHECK(std::abs(p.theta[0].radians() - target) < 1e-2);
  CHECK(p.x.norm() < 1e-2);
  CHECK(p.y < 1e-2);
  CHECK_THROWS(counterexample_family(Counterexample::NonFaithful, 2, kPi / 2));
}

TEST_CASE("corrected non-discrete example") {
  const int k = 4;
  const auto f = counterexample_family(Counterexample::NonDiscreteGeometricCorrected, k);
  const auto probes = default_probes(8, 16, f.n_step);
  const auto one = numeric_limit(f, Schedule::constant(1), probes);
  REQUIRE(one.converged);
  CHECK(UnipotentLimit<double>::from_matrix(one.extrapolated).v.norm() > 1e-3);
  const auto half = numeric_limit(f, Schedule::rounded(1, 2, 2), probes);
  REQUIRE(half.converged);
  Eigen::VectorXd e = Eigen::VectorXd::Zero(k);
  e(0) = -kPi;
  CHECK((UnipotentLimit<double>::from_matrix(half.extrapolated).v - e).cwiseAbs().maxCoeff() < 1e-3);
}

TEST_CASE("counterexample names") {
  for (auto c : {Counterexample::NonFaithful, Counterexample::NonDiscreteGeometric, Counterexample::NonDiscreteGeometricCorrected})
    CHECK(parse_counterexample(counterexample_name(c)) == c);
  CHECK_THROWS(parse_counterexample("nope"));
}

TEST_CASE("rationals") {
  CHECK(Rational(6, -4) == Rational(-3, 2));
  CHECK(Rational::parse("-3/6") == Rational(-1, 2));
  CHECK(Rational::parse("7") == Rational(7));
  CHECK((Rational(1, 3) + Rational(1, 6)) == Rational(1, 2));
  CHECK((Rational(2, 3) * Rational(3, 4)) == Rational(1, 2));
  CHECK((Rational(1, 2) / Rational(1, 4)) == Rational(2));
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational::from_double(0.125) == Rational(1, 8));
  CHECK(Rational(-2, 5).str() == "-2/5");
  CHECK_THROWS(Rational(1, 0));
  CHECK_THROWS(Rational::parse("1/x"));
  CHECK_THROWS(Rational::from_double(kPi, 100, 1e-12));
  CHECK_THROWS(Rational(1LL << 62) * Rational(8));
  CHECK(exact_fraction(5, 1, 4) == doctest::Approx(0.25));
  CHECK(exact_fraction(checked_pow(2, 70) + 1, 1, 4) == doctest::Approx(0.25));
  CHECK_THROWS(checked_pow(10, 60));
}

TEST_CASE("realize a rank-2 lattice in k = 2") {
  LatticeSpec spec;
  spec.k = 2;
  spec.w = {Rational(1)};
  spec.b = {{}, {Rational(0)}};
  spec.c = Rational(1);
  const auto rz = realize_lattice(spec);
  REQUIRE(rz.schedules.size() == 2);
  CHECK(rz.schedules[0].exponent_at(50) == 1);
  CHECK(rz.schedules[1].exponent_at(50) == 50);
  const auto d = rz.family.data_at(16);
  CHECK(d.x(1) == doctest::Approx(16.0));
  CHECK(d.y == doctest::Approx(1.0 / 256.0));
  CHECK(d.theta[0].radians() == doctest::Approx(kTwoPi / 16.0));
  const auto g = harvest_limit_group(rz.family, rz.schedules, default_probes(8, 16, rz.family.n_step));
  CHECK(g.detected_rank == 2);
  Eigen::MatrixXd E(2, 2);
  E << -kTwoPi, 0, 0, -1;
  CHECK(lattice_containment_residual(g.coordinate_matrix(), E) < 1e-5);
  CHECK(lattice_containment_residual(E, g.coordinate_matrix()) < 1e-5);
}

TEST_CASE("realize a rank-1 lattice") {
  LatticeSpec spec;
  spec.k = 4;
  spec.w = {Rational(1)};
  spec.b = {{}};
  const auto rz = realize_lattice(spec);
  REQUIRE(rz.schedules.size() == 1);
  const auto g = harvest_limit_group(rz.family, rz.schedules, default_probes(8, 16, rz.family.n_step));
  CHECK(g.detected_rank == 1);
  Eigen::VectorXd e = Eigen::VectorXd::Zero(4);
  e(0) = -kTwoPi;
  REQUIRE(g.generators.size() == 1);
  CHECK((g.generators[0].v - e).norm() < 1e-3);
}

TEST_CASE("built-in lattice fed back through realization") {
  const int k = 4;
  const auto f = jorgensen_real_family(k);
  const auto g = harvest_limit_group(f, f.schedules, default_probes(8, 16));
  const auto spec = LatticeSpec::from_generators(k, g.coordinate_matrix());
  const auto rz = realize_lattice(spec);
  const auto h = harvest_limit_group(rz.family, rz.schedules, default_probes(8, 16, rz.family.n_step));
  CHECK(lattice_containment_residual(g.coordinate_matrix(), h.coordinate_matrix()) < 1e-5);
  CHECK(lattice_containment_residual(h.coordinate_matrix(), g.coordinate_matrix()) < 1e-5);
}

TEST_CASE("lattice spec validation") {
  LatticeSpec bad;
  bad.k = 2;
  bad.w = {Rational(1), Rational(1)};
  bad.b = {{}, {Rational(0)}, {Rational(0), Rational(0)}};
  CHECK_THROWS(bad.validate());
  LatticeSpec big;
  big.k = 2;
  big.w = {Rational(1)};
  big.b = {{}, {Rational(3, 2)}};
  big.c = Rational(1);
  CHECK_THROWS(big.validate());
}
