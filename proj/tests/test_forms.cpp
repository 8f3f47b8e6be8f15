#include "helpers.hpp"

#include "hyplim/forms.hpp"

using namespace hyplim;
using testing::max_diff;

TEST_CASE("form_eval on basis vectors") {
  for (int k = 1; k <= 4; ++k) {
    Eigen::VectorXd e0 = Eigen::VectorXd::Zero(k + 2), ee = e0;
    e0(0) = 1.0;
    ee(0) = ee(k + 1) = 1.0;
    CHECK(form_eval<double>(e0, e0) == 0.0);
    CHECK(form_eval<double>(ee, ee) == 2.0);
  }
  Eigen::VectorXd z = Eigen::VectorXd::Zero(4);
  z(1) = 1.0;
  CHECK(form_eval<double>(z, z) == -1.0);
}

TEST_CASE("form_eval is Hermitian") {
  std::mt19937_64 g(11);
  std::normal_distribution<double> nd;
  for (int i = 0; i < 200; ++i) {
    Eigen::VectorXcd z(5), w(5);
    for (int j = 0; j < 5; ++j) {
      z(j) = Complex(nd(g), nd(g));
      w(j) = Complex(nd(g), nd(g));
    }
    CHECK(std::abs(form_eval<Complex>(z, w) - std::conj(form_eval<Complex>(w, z))) < 1e-12);
  }
}

TEST_CASE("form_matrix layout") {
  const Eigen::MatrixXd Q = form_matrix<double>(2);
  CHECK(max_diff<double>(Q, testing::rows_real({{0, 0, 0, 1}, {0, -1, 0, 0}, {0, 0, -1, 0}, {1, 0, 0, 0}})) == 0.0);
  CHECK_THROWS_AS(form_matrix<double>(0), std::invalid_argument);
}

TEST_CASE("group membership") {
  CHECK(is_in_group(GroupElement<double>::identity(3)));
  Eigen::MatrixXd D = Eigen::MatrixXd::Identity(4, 4);
  D(0, 0) = 2.0;
  D(3, 3) = 0.5;
  CHECK(is_in_group(GroupElement<double>(D)));
  Eigen::MatrixXd B = Eigen::MatrixXd::Identity(4, 4);
  B(0, 0) = 1.0 + 1e-6;
  CHECK_FALSE(is_in_group(GroupElement<double>(B, 1e-10)));
  Eigen::MatrixXd R = Eigen::MatrixXd::Identity(3, 3);
  R(1, 1) = -1.0;  // preserves Q but det -1
  CHECK_FALSE(is_in_group(GroupElement<double>(R)));
}

TEST_CASE("GroupElement construction errors") {
  CHECK_THROWS_AS(GroupElement<double>(Eigen::MatrixXd::Identity(2, 2)), std::invalid_argument);
  CHECK_THROWS_AS(GroupElement<double>(Eigen::MatrixXd::Identity(3, 4)), std::invalid_argument);
}

TEST_CASE("inverse and powers") {
  Eigen::VectorXd a(2);
  a << 0.3, -1.2;
  const auto u = unipotent_from_vector(BoundaryPoint<double>::finite(a));
  CHECK(max_diff<double>((u * u.inverse()).matrix(), Eigen::MatrixXd::Identity(4, 4)) < 1e-14);
  const auto u5 = u.pow(5);
  const auto direct = unipotent_from_vector(BoundaryPoint<double>::finite(Eigen::VectorXd(5.0 * a)));
  CHECK(max_diff<double>(u5.matrix(), direct.matrix()) < 1e-12);
  CHECK(max_diff<double>(u.pow(-2).matrix(), (u.inverse() * u.inverse()).matrix()) < 1e-13);
  CHECK(max_diff<double>(u.pow(0).matrix(), Eigen::MatrixXd::Identity(4, 4)) == 0.0);
}

TEST_CASE("boundary embedding") {
  const Eigen::VectorXd o = boundary_embed(BoundaryPoint<double>::origin(3));
  CHECK(o.isApprox(Eigen::Vector<double, 5>(0, 0, 0, 0, 1)));
  Eigen::VectorXd a(2);
  a << 0, 1;
  CHECK(boundary_embed(BoundaryPoint<double>::finite(a)).isApprox(Eigen::Vector4d(0.5, 0, 1, 1)));
  Eigen::VectorXcd z = Eigen::VectorXcd::Zero(1);
  const Eigen::VectorXcd c = boundary_embed(BoundaryPoint<Complex>::finite(z, 1.0));
  CHECK(std::abs(c(0) - Complex(0, 1)) == 0.0);
  CHECK(std::abs(c(1)) == 0.0);
  CHECK(std::abs(c(2) - 1.0) == 0.0);
  CHECK_THROWS_AS(BoundaryPoint<double>::finite(a, 1.0), std::invalid_argument);
}

TEST_CASE("boundary extraction") {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(4);
  v(3) = 1.0;
  CHECK(boundary_extract<double>(v).a().norm() == 0.0);
  const auto p = boundary_extract<double>(Eigen::Vector4d(1.5, 0, 3, 3));
  CHECK(p.a()(0) == doctest::Approx(0.0));
  CHECK(p.a()(1) == doctest::Approx(1.0));
  CHECK(boundary_extract<double>(Eigen::Vector4d(1, 0, 0, 0)).is_infinity());
  CHECK_THROWS_AS(boundary_extract<double>(Eigen::Vector4d(1, 0, 0, 1)), HyplimError);
  CHECK_THROWS_AS(boundary_extract<double>(Eigen::Vector4d::Zero()), HyplimError);
}

TEST_CASE("embedding round trip and null vectors") {
  std::mt19937_64 g(12);
  std::normal_distribution<double> nd;
  for (int i = 0; i < 100; ++i) {
    Eigen::VectorXcd a(3);
    for (int j = 0; j < 3; ++j) a(j) = Complex(nd(g), nd(g));
    const auto p = BoundaryPoint<Complex>::finite(a, nd(g));
    const Eigen::VectorXcd v = boundary_embed(p);
    CHECK(std::abs(form_eval<Complex>(v, v)) < 1e-12);
    const auto q = boundary_extract<Complex>(Eigen::VectorXcd(Complex(0.3, -2.0) * v));
    CHECK((q.a() - p.a()).norm() < 1e-12);
    CHECK(q.b() == doctest::Approx(p.b()).epsilon(1e-12));
  }
}

TEST_CASE("Heisenberg group law") {
  Eigen::VectorXcd one(1), i1(1);
  one << 1.0;
  i1 << Complex(0, 1);
  const auto r = heisenberg_mul(BoundaryPoint<Complex>::finite(one), BoundaryPoint<Complex>::finite(i1));
  CHECK(std::abs(r.a()(0) - Complex(1, 1)) < 1e-15);
  CHECK(r.b() == doctest::Approx(1.0));
  const auto p = BoundaryPoint<Complex>::finite(i1, 0.7);
  const auto id = heisenberg_mul(BoundaryPoint<Complex>::origin(1), p);
  CHECK(std::abs(id.a()(0) - i1(0)) == 0.0);
  CHECK(id.b() == 0.7);
  const auto z = heisenberg_mul(p, heisenberg_inverse(p));
  CHECK(z.a().norm() == 0.0);
  CHECK(z.b() == 0.0);
}

TEST_CASE("unipotent_from_vector matches the displayed matrices") {
  Eigen::VectorXd a(2);
  a << 0, 1;
  CHECK(max_diff<double>(unipotent_from_vector(BoundaryPoint<double>::finite(a)).matrix(),
                         testing::rows_real({{1, 0, 1, 0.5}, {0, 1, 0, 0}, {0, 0, 1, 1}, {0, 0, 0, 1}})) == 0.0);
  CHECK(max_diff<double>(unipotent_from_vector(BoundaryPoint<double>::origin(2)).matrix(), Eigen::MatrixXd::Identity(4, 4)) == 0.0);
  Eigen::MatrixXcd E = Eigen::MatrixXcd::Identity(3, 3);
  E(0, 2) = Complex(0, 1);
  const auto u = unipotent_from_vector(BoundaryPoint<Complex>::finite(Eigen::VectorXcd::Zero(1), 1.0));
  CHECK(max_diff<Complex>(u.matrix(), E) == 0.0);
}

TEST_CASE("unipotent action is the group law") {
  std::mt19937_64 g(13);
  std::normal_distribution<double> nd;
  for (int i = 0; i < 50; ++i) {
    Eigen::VectorXcd a(2), b(2);
    for (int j = 0; j < 2; ++j) {
      a(j) = Complex(nd(g), nd(g));
      b(j) = Complex(nd(g), nd(g));
    }
    const auto p = BoundaryPoint<Complex>::finite(a, nd(g)), q = BoundaryPoint<Complex>::finite(b, nd(g));
    const auto r = act(unipotent_from_vector(p), q);
    const auto h = heisenberg_mul(p, q);
    CHECK((r.a() - h.a()).norm() < 1e-10);
    CHECK(r.b() == doctest::Approx(h.b()).epsilon(1e-10));
  }
}

TEST_CASE("Cygan distance: translation invariance and dilation") {
  std::mt19937_64 g(14);
  std::normal_distribution<double> nd;
  for (int i = 0; i < 50; ++i) {
    Eigen::VectorXcd a(2), b(2), c(2);
    for (int j = 0; j < 2; ++j) {
      a(j) = Complex(nd(g), nd(g));
      b(j) = Complex(nd(g), nd(g));
      c(j) = Complex(nd(g), nd(g));
    }
    const double ba = nd(g), bb = nd(g), bc = nd(g);
    const auto p = BoundaryPoint<Complex>::finite(a, ba), q = BoundaryPoint<Complex>::finite(b, bb);
    const auto t = BoundaryPoint<Complex>::finite(c, bc);
    const double d = boundary_distance(p, q);
    CHECK(boundary_distance(heisenberg_mul(t, p), heisenberg_mul(t, q)) == doctest::Approx(d).epsilon(1e-9));
    const double r = 2.5;
    const auto pr = BoundaryPoint<Complex>::finite(Eigen::VectorXcd(r * a), r * r * ba);
    const auto qr = BoundaryPoint<Complex>::finite(Eigen::VectorXcd(r * b), r * r * bb);
    CHECK(boundary_distance(pr, qr) == doctest::Approx(r * d).epsilon(1e-9));
  }
  Eigen::VectorXd x(2), y(2);
  x << 1, 2;
  y << 4, 6;
  CHECK(boundary_distance(BoundaryPoint<double>::finite(x), BoundaryPoint<double>::finite(y)) == doctest::Approx(5.0));
}
