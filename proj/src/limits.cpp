#include "hyplim/limits.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hyplim/isometry.hpp"
#include "hyplim/lattice.hpp"
#include "hyplim/parallel.hpp"
#include "hyplim/sequence.hpp"

namespace hyplim {

Schedule Schedule::power(int r, Exponent coefficient) {
  Schedule s;
  s.exponent_at = [r, coefficient](long long n) { return checked_mul(coefficient, checked_pow(n, r)); };
  s.description = (coefficient == 1 ? std::string() : to_string(coefficient) + "*") + "n^" + std::to_string(r);
  return s;
}

Schedule Schedule::constant(Exponent m) {
  Schedule s;
  s.exponent_at = [m](long long) { return m; };
  s.description = to_string(m);
  return s;
}

Schedule Schedule::rounded(Exponent p, Exponent q, int a, int b) {
  if (q <= 0) throw std::invalid_argument("Schedule::rounded: q must be positive");
  Schedule s;
  s.exponent_at = [=](long long n) {
    const Exponent num = checked_mul(p, checked_pow(n, a));
    Exponent r = (2 * num + q) / (2 * q);
    if ((2 * num + q) % (2 * q) != 0 && 2 * num + q < 0) r -= 1;
    return checked_mul(r, checked_pow(n, b));
  };
  s.description = "round(" + to_string(p) + "*n^" + std::to_string(a) + "/" + to_string(q) + ")" +
                  (b == 0 ? std::string() : "*n^" + std::to_string(b));
  return s;
}

std::vector<long long> default_probes(int lo, int hi, long long step) {
  std::vector<long long> n;
  for (int j = lo; j <= hi; ++j) {
    long long v = 1LL << j;
    v = ((v + step - 1) / step) * step;
    if (n.empty() || v > n.back()) n.push_back(v);
  }
  return n;
}

// ---------------------------------------------------------------------------

template <typename Scalar>
UnipotentLimit<Scalar> UnipotentLimit<Scalar>::from_vector(const Vec<Scalar>& v) {
  UnipotentLimit u;
  u.v = v;
  u.s = Scalar(v.squaredNorm() / 2.0);
  return u;
}

template <typename Scalar>
UnipotentLimit<Scalar> UnipotentLimit<Scalar>::from_matrix(const Mat<Scalar>& M) {
  const Eigen::Index k = M.rows() - 2;
  UnipotentLimit u;
  u.v = M.block(1, k + 1, k, 1);
  u.s = is_complex_v<Scalar> ? M(0, k + 1) : Scalar(u.v.squaredNorm() / 2.0);
  return u;
}

template <typename Scalar>
GroupElement<Scalar> UnipotentLimit<Scalar>::element() const {
  const Eigen::Index k = v.size();
  Mat<Scalar> M = Mat<Scalar>::Identity(k + 2, k + 2);
  M.block(0, 1, 1, k) = v.adjoint();
  M.block(1, k + 1, k, 1) = v;
  M(0, k + 1) = s;
  return GroupElement<Scalar>(M);
}

template <typename Scalar>
Eigen::VectorXd UnipotentLimit<Scalar>::coordinates() const {
  if constexpr (is_complex_v<Scalar>) {
    const Eigen::Index k = v.size();
    Eigen::VectorXd c(2 * k + 1);
    c.head(k) = v.real();
    c.segment(k, k) = v.imag();
    c(2 * k) = std::imag(s);
    return c;
  } else {
    return v;
  }
}

template struct UnipotentLimit<double>;
template struct UnipotentLimit<Complex>;

// ---------------------------------------------------------------------------

namespace {

std::vector<double> as_double(const std::vector<long long>& n) { return {n.begin(), n.end()}; }

struct Analyzed {
  bool converges = false;
  double limit = 0.0;
  double error = 0.0;
  double last_difference = 0.0;
};

Analyzed analyze(const std::vector<double>& n, const std::vector<double>& s, const std::vector<double>& exps) {
  std::vector<double> d;
  double mx = 0.0;
  for (double v : s) mx = std::max(mx, std::abs(v));
  for (std::size_t i = 0; i + 1 < s.size(); ++i) d.push_back(std::abs(s[i + 1] - s[i]));
  const double floor = 1e-12 * (1.0 + mx);
  const auto ct = cauchy_test(d, floor, 1e-2 * (1.0 + std::abs(s.back())));
  Analyzed a;
  a.converges = ct.converges;
  a.last_difference = ct.last_difference;
  if (a.converges) a.limit = extrapolate_scalar(n, s, exps, &a.error);
  return a;
}

bool grows(const std::vector<double>& s) {
  double lo = INFINITY, hi = 0.0;
  for (double v : s) {
    lo = std::min(lo, std::abs(v));
    hi = std::max(hi, std::abs(v));
  }
  if (hi == 0.0) return false;
  return lo == 0.0 ? true : hi / lo >= 10.0;
}

}  // namespace

ConvergenceReport<double> check_convergence_real(const RealFamily& f, const std::vector<long long>& n_probe) {
  if (n_probe.size() < 4) throw std::invalid_argument("check_convergence_real: need at least 4 probes");
  const int k = f.k, l = k / 2;
  if (l < 1) throw HyplimError("family hypotheses not met: k must be at least 2");
  std::vector<GeomDataReal> data;
  for (long long n : n_probe) data.push_back(f.data_at(n));
  for (const auto& d : data) {
    d.validate();
    const double sc = 1e-9 * (1.0 + d.x.cwiseAbs().maxCoeff());
    for (int i = 0; i < k; i += 2)
      if (std::abs(d.x(i)) > sc) throw HyplimError("family hypotheses not met: odd coordinate nonzero");
    for (int j = 1; j < l; ++j)
      if (d.x(2 * j + 1) < d.x(2 * j - 1) - sc) throw HyplimError("family hypotheses not met: even coordinates unsorted");
  }
  const std::vector<double> n = as_double(n_probe);
  auto seq = [&](auto fn) {
    std::vector<double> s;
    for (const auto& d : data) s.push_back(fn(d));
    return s;
  };
  std::vector<bool> divergent(l);
  for (int j = 0; j < l; ++j) divergent[j] = grows(seq([&](const GeomDataReal& d) { return d.x(2 * j + 1); }));
  if (!divergent[l - 1]) throw HyplimError("family hypotheses not met: x_{2l} does not diverge");

  ConvergenceReport<double> r;
  r.limit.v = Eigen::VectorXd::Zero(k);
  std::vector<Angle> theta_lim(l);
  bool torus = false;
  auto fail = [&](int idx, const std::string& why) {
    r.converges = false;
    r.offending_index = idx;
    r.reason = why;
    return r;
  };
  auto take = [&](const Analyzed& a) {
    r.residuals.push_back(a.last_difference);
    r.extrapolation_error = std::max(r.extrapolation_error, a.error);
  };
  for (int j = 0; j < l; ++j) {
    if (divergent[j]) {
      const auto a = analyze(n, seq([&](const GeomDataReal& d) { return d.theta[j].radians() * d.x(2 * j + 1); }), f.rate_exponents);
      take(a);
      if (!a.converges) return fail(j + 1, "theta_" + std::to_string(j + 1) + " x_" + std::to_string(2 * j + 2) + " does not converge");
      r.limit.v(2 * j) = -a.limit;
    } else {
      const auto th = analyze(n, seq([&](const GeomDataReal& d) { return d.theta[j].radians(); }), f.rate_exponents);
      const auto a = analyze(n, seq([&](const GeomDataReal& d) { return std::sin(d.theta[j].radians()) * d.x(2 * j + 1); }), f.rate_exponents);
      take(a);
      if (!th.converges || !a.converges) return fail(j + 1, "bounded block " + std::to_string(j + 1) + " does not converge");
      theta_lim[j] = Angle::from_radians(th.limit);
      if (std::abs(th.limit) > 1e-9) torus = true;
      r.limit.v(2 * j) = -a.limit;
    }
  }
  {
    const auto a = analyze(n, seq([&](const GeomDataReal& d) { return d.y * d.x(2 * l - 1); }), f.rate_exponents);
    take(a);
    if (!a.converges) return fail(l + 1, "y x_" + std::to_string(2 * l) + " does not converge");
  }
  for (int j = 0; j < l; ++j) {
    Analyzed a;
    if (divergent[j]) {
      a = analyze(n, seq([&](const GeomDataReal& d) { return d.y * d.x(2 * j + 1); }), f.rate_exponents);
    } else {
      a = analyze(n, seq([&](const GeomDataReal& d) {
        const double h = std::sin(d.theta[j].radians() / 2.0);
        return -(std::expm1(-d.y) + 2.0 * h * h) * d.x(2 * j + 1);
      }), f.rate_exponents);
    }
    take(a);
    if (!a.converges) return fail(l + 1, "y x_" + std::to_string(2 * j + 2) + " does not converge");
    r.limit.v(2 * j + 1) = -a.limit;
  }
  r.converges = true;
  r.limit.s = r.limit.v.squaredNorm() / 2.0;
  if (torus) {
    const Eigen::MatrixXd A = rotation_matrix_real(theta_lim, k);
    Eigen::MatrixXd M = Eigen::MatrixXd::Identity(k + 2, k + 2);
    M.block(0, 1, 1, k) = r.limit.v.transpose() * A;
    M(0, k + 1) = r.limit.s;
    M.block(1, 1, k, k) = A;
    M.block(1, k + 1, k, 1) = r.limit.v;
    r.limit_matrix = M;
  }
  return r;
}

ConvergenceReport<Complex> check_convergence_complex(const ComplexFamily& f, const std::vector<long long>& n_probe) {
  if (n_probe.size() < 4) throw std::invalid_argument("check_convergence_complex: need at least 4 probes");
  const int k = f.k;
  std::vector<GeomDataComplex> data;
  for (long long n : n_probe) data.push_back(f.data_at(n));
  for (const auto& d : data) {
    d.validate();
    const double sc = 1e-9 * (1.0 + d.x.cwiseAbs().maxCoeff());
    for (int j = 0; j < k; ++j) {
      if (std::abs(d.x(j).imag()) > sc || d.x(j).real() < -sc)
        throw HyplimError("family hypotheses not met: x must be real and nonnegative");
      if (j > 0 && d.x(j).real() < d.x(j - 1).real() - sc) throw HyplimError("family hypotheses not met: x unsorted");
    }
  }
  const std::vector<double> n = as_double(n_probe);
  auto seq = [&](auto fn) {
    std::vector<double> s;
    for (const auto& d : data) s.push_back(fn(d));
    return s;
  };
  if (!grows(seq([](const GeomDataComplex& d) { return d.x(0).real(); })))
    throw HyplimError("family hypotheses not met: x_1 does not diverge");

  ConvergenceReport<Complex> r;
  auto fail = [&](int idx, const std::string& why) {
    r.converges = false;
    r.offending_index = idx;
    r.reason = why;
    return r;
  };
  auto take = [&](const Analyzed& a) {
    r.residuals.push_back(a.last_difference);
    r.extrapolation_error = std::max(r.extrapolation_error, a.error);
  };
  auto delta = [](const GeomDataComplex& d, int j) { return (d.phase - d.theta[j]).radians(); };
  Eigen::VectorXcd v(k);
  for (int j = 0; j < k; ++j) {
    const auto a = analyze(n, seq([&](const GeomDataComplex& d) { return delta(d, j) * d.x(j).real(); }), f.rate_exponents);
    take(a);
    if (!a.converges) return fail(j + 1, "(phi - theta_" + std::to_string(j + 1) + ") x_" + std::to_string(j + 1) + " does not converge");
    v(j) = Complex(0.0, a.limit);
  }
  {
    const auto a = analyze(n, seq([&](const GeomDataComplex& d) { return d.y * d.x(k - 1).real(); }), f.rate_exponents);
    take(a);
    if (!a.converges) return fail(k + 1, "y x_k does not converge");
  }
  for (int j = 0; j < k; ++j) {
    const auto a = analyze(n, seq([&](const GeomDataComplex& d) { return d.y * d.x(j).real(); }), f.rate_exponents);
    take(a);
    if (!a.converges) return fail(k + 1, "y x_" + std::to_string(j + 1) + " does not converge");
    v(j) += -a.limit;
  }
  const auto sum = analyze(n, seq([&](const GeomDataComplex& d) {
    double s = 0.0;
    for (int j = 0; j < k; ++j) s += std::norm(d.x(j)) * delta(d, j);
    return s;
  }), f.rate_exponents);
  take(sum);
  if (!sum.converges) return fail(k + 2, "sum x_j^2 (phi - theta_j) does not converge");
  const auto ty = analyze(n, seq([](const GeomDataComplex& d) { return d.t * d.y; }), f.rate_exponents);
  take(ty);
  if (!ty.converges) return fail(k + 3, "t y does not converge");
  const auto re = analyze(n, seq([&](const GeomDataComplex& d) {
    const double ph = d.phase.radians();
    double s = 0.0;
    for (int j = 0; j < k; ++j) {
      const double th = d.theta[j].radians();
      s += std::norm(d.x(j)) * (d.y * d.y - ph * ph + th * th);
    }
    return s / 2.0;
  }), f.rate_exponents);
  take(re);
  if (!re.converges) return fail(k + 4, "Re(s) does not converge");
  r.converges = true;
  r.limit.v = v;
  r.limit.s = Complex(re.limit, sum.limit - 2.0 * ty.limit);
  r.re_s_consistency = std::abs(re.limit - v.squaredNorm() / 2.0);
  return r;
}

// ---------------------------------------------------------------------------

namespace {

template <typename Scalar>
Eigen::MatrixXd stack(const Mat<Scalar>& M) {
  if constexpr (is_complex_v<Scalar>) {
    Eigen::MatrixXd S(2 * M.rows(), M.cols());
    S.topRows(M.rows()) = M.real();
    S.bottomRows(M.rows()) = M.imag();
    return S;
  } else {
    return M;
  }
}

template <typename Scalar>
Mat<Scalar> unstack(const Eigen::MatrixXd& S) {
  if constexpr (is_complex_v<Scalar>) {
    const Eigen::Index r = S.rows() / 2;
    Mat<Scalar> M(r, S.cols());
    M.real() = S.topRows(r);
    M.imag() = S.bottomRows(r);
    return M;
  } else {
    return S;
  }
}

}  // namespace

template <typename Data>
NumericLimit<ScalarOf<Data>> numeric_limit(const FamilySpec<Data>& f, const Schedule& s, const std::vector<long long>& n_values,
                                           double tol) {
  using Scalar = ScalarOf<Data>;
  if (n_values.size() < 4) throw std::invalid_argument("numeric_limit: need at least 4 n values");
  for (std::size_t i = 1; i < n_values.size(); ++i)
    if (n_values[i] <= n_values[i - 1]) throw std::invalid_argument("numeric_limit: n values must increase");
  std::vector<Mat<Scalar>> Ms(n_values.size());
  parallel_for(n_values.size(), [&](std::size_t i) {
    const long long n = n_values[i];
    Ms[i] = matrix_from_data(f.data_power(n, s.exponent_at(n))).matrix();
  });
  NumericLimit<Scalar> r;
  double mx = 0.0;
  for (const auto& M : Ms) mx = std::max(mx, inf_norm<Scalar>(M));
  for (std::size_t i = 0; i + 1 < Ms.size(); ++i) r.residuals.push_back(inf_norm<Scalar>(Mat<Scalar>(Ms[i + 1] - Ms[i])));
  const double scale = 1.0 + inf_norm<Scalar>(Ms.back());
  const auto ct = cauchy_test(r.residuals, 1e-12 * (1.0 + mx), tol * scale);
  r.converged = ct.converges && std::isfinite(mx);
  r.worst_ratio = ct.worst_ratio;
  r.limit = Ms.back();
  std::vector<Eigen::MatrixXd> st;
  for (const auto& M : Ms) st.push_back(stack<Scalar>(M));
  const auto ex = extrapolate(as_double(n_values), st, f.rate_exponents);
  r.extrapolated = unstack<Scalar>(ex.value);
  r.extrapolation_error = ex.error;
  return r;
}

template <typename Data>
StrongConvergence<ScalarOf<Data>> strong_convergence_check(const FamilySpec<Data>& f, const std::vector<long long>& n_probe,
                                                           double tol_sep) {
  using Scalar = ScalarOf<Data>;
  if (n_probe.size() < 4) throw std::invalid_argument("strong_convergence_check: need at least 4 probes");
  const int k = f.k;
  std::vector<Eigen::MatrixXd> ws;
  std::vector<double> diffs;
  for (long long n : n_probe) {
    const Data d = f.data_at(n);
    const Vec<Scalar> w = sphere_coordinates<Scalar>(boundary_embed(repelling_point(d)));
    ws.push_back(stack<Scalar>(Mat<Scalar>(w)));
  }
  for (std::size_t i = 0; i + 1 < ws.size(); ++i) diffs.push_back((ws[i + 1] - ws[i]).norm());
  if (!cauchy_test(diffs, 1e-12, 1e-2).converges) throw HyplimError("fixed points do not converge on probe set");
  Eigen::MatrixXd wl = extrapolate(as_double(n_probe), ws, f.rate_exponents).value;
  Vec<Scalar> w = unstack<Scalar>(wl).col(0);
  w /= w.norm();
  Vec<Scalar> w_inf = Vec<Scalar>::Zero(k + 1);
  w_inf(k) = Scalar(1);
  StrongConvergence<Scalar> r;
  r.attracting_limit = BoundaryPoint<Scalar>::infinity(k);
  r.separation = (w - w_inf).norm();
  // back to a null vector: c = (1, w) in the ball basis
  const double h = 1.0 / std::sqrt(2.0);
  Vec<Scalar> v(k + 2);
  v(0) = h * (Scalar(1) + w(k));
  v.segment(1, k) = w.head(k);
  v(k + 1) = h * (Scalar(1) - w(k));
  r.repelling_limit = boundary_extract<Scalar>(v, 1e-6);
  r.strong = r.separation >= tol_sep;
  return r;
}

template <typename Scalar>
Eigen::MatrixXd LimitGroup<Scalar>::coordinate_matrix() const {
  if (generators.empty()) return Eigen::MatrixXd();
  const Eigen::Index dim = generators.front().coordinates().size();
  Eigen::MatrixXd G(dim, generators.size());
  for (std::size_t j = 0; j < generators.size(); ++j) G.col(j) = generators[j].coordinates();
  return G;
}

template struct LimitGroup<double>;
template struct LimitGroup<Complex>;

template <typename Data>
LimitGroup<ScalarOf<Data>> harvest_limit_group(const FamilySpec<Data>& f, const std::vector<Schedule>& schedules,
                                               const std::vector<long long>& n_values) {
  using Scalar = ScalarOf<Data>;
  LimitGroup<Scalar> g;
  const int k = f.k;
  for (const auto& s : schedules) {
    const auto nl = numeric_limit(f, s, n_values);
    if (!nl.converged) throw HyplimError("schedule " + s.description + " does not converge");
    const Mat<Scalar>& E = nl.extrapolated;
    const double dev = std::max(std::abs(E(0, 0) - Scalar(1)),
                                inf_norm<Scalar>(Mat<Scalar>(E.block(1, 1, k, k) - Mat<Scalar>::Identity(k, k))));
    if (dev > 1e-4) {
      g.torus.emplace_back(E, 1e-6);
      continue;
    }
    const auto u = UnipotentLimit<Scalar>::from_matrix(E);
    const Eigen::VectorXd c = u.coordinates();
    if (c.norm() <= 1e-6) continue;
    bool dup = false;
    for (const auto& o : g.generators)
      if ((o.coordinates() - c).norm() <= 1e-6 * (1.0 + c.norm())) dup = true;
    if (dup) continue;
    g.generators.push_back(u);
    g.sources.push_back(s.description);
  }
  for (std::size_t i = 0; i < g.generators.size(); ++i)
    for (std::size_t j = i + 1; j < g.generators.size(); ++j) {
      const auto a = g.generators[i].element(), b = g.generators[j].element();
      const Mat<Scalar> c = (a * b * a.inverse() * b.inverse()).matrix() - Mat<Scalar>::Identity(k + 2, k + 2);
      const double sc = 1.0 + inf_norm<Scalar>(a.matrix()) * inf_norm<Scalar>(b.matrix());
      if (inf_norm<Scalar>(c) > 1e-8 * sc)
        throw HyplimError("harvested limits do not commute (" + g.sources[i] + ", " + g.sources[j] + ")");
    }
  const Eigen::MatrixXd G = g.coordinate_matrix();
  g.detected_rank = numeric_rank(G);
  // commuting loxodromic limits share an axis and add one cyclic factor
  double shortest_translation = 0.0;
  for (const auto& t : g.torus) {
    const double len = translation_length(t);
    if (len > 1e-6 && (shortest_translation == 0.0 || len < shortest_translation)) shortest_translation = len;
  }
  if (shortest_translation > 0.0) ++g.detected_rank;
  if (!g.generators.empty()) {
    g.shortest_vector = shortest_vector(G).norm;
    g.discrete_certificate = g.shortest_vector > 1e-4;
  } else if (shortest_translation > 0.0) {
    g.shortest_vector = shortest_translation;
    g.discrete_certificate = true;
  }
  return g;
}

RankBound rank_bound_real(const RealFamily& f, const std::vector<long long>& n_probe) {
  const int k = f.k, l = k / 2;
  std::vector<std::vector<double>> xs(l);
  for (long long n : n_probe) {
    const auto d = f.data_at(n);
    const double sc = 1e-9 * (1.0 + d.x.cwiseAbs().maxCoeff());
    for (int i = 0; i < 2 * l; i += 2)
      if (std::abs(d.x(i)) > sc) throw HyplimError("rank_bound_real: odd coordinates must vanish");
    for (int j = 1; j < l; ++j)
      if (d.x(2 * j + 1) < d.x(2 * j - 1) - sc) throw HyplimError("rank_bound_real: even coordinates must be sorted");
    for (int j = 0; j < l; ++j) xs[j].push_back(d.x(2 * j + 1));
  }
  int i = 0;
  for (int j = 0; j < l; ++j)
    if (!grows(xs[j])) i = j + 1;
  return {l - i + 1, i, l - i + 1};
}

#define HYPLIM_INSTANTIATE(D)                                                                                              \
  template NumericLimit<ScalarOf<D>> numeric_limit<D>(const FamilySpec<D>&, const Schedule&, const std::vector<long long>&, \
                                                      double);                                                             \
  template StrongConvergence<ScalarOf<D>> strong_convergence_check<D>(const FamilySpec<D>&, const std::vector<long long>&,  \
                                                                      double);                                             \
  template LimitGroup<ScalarOf<D>> harvest_limit_group<D>(const FamilySpec<D>&, const std::vector<Schedule>&,               \
                                                          const std::vector<long long>&);
HYPLIM_INSTANTIATE(GeomDataReal)
HYPLIM_INSTANTIATE(GeomDataComplex)
#undef HYPLIM_INSTANTIATE

}  // namespace hyplim
