#include "hyplim/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>
#include <sstream>

#include "hyplim/lattice.hpp"
#include "hyplim/schottky.hpp"

namespace hyplim {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

const char* kGroups[] = {"tables", "tables", "classic", "oracle", "structure", "rank", "realize", "counterexamples", "schottky"};
const char* kTitles[] = {
    "real limit table (k = 2..5)",
    "complex limit table (k = 1..3)",
    "classic Jorgensen limits at n = 1e5",
    "predicate and numeric oracle agree on random families",
    "structural invariants on random data",
    "rank bound on harvested limit groups",
    "lattice realization round trip",
    "counterexample families",
    "Schottky certificates",
};

class Suite {
 public:
  explicit Suite(const AcceptanceOptions& o) : opt_(o) {}

  bool wants(int criterion, const std::string& name) const {
    if (opt_.only.empty()) return true;
    for (const auto& s : opt_.only) {
      if (s == kGroups[criterion - 1] || s == std::to_string(criterion)) return true;
      if (name.rfind(s, 0) == 0) return true;
    }
    return false;
  }
  bool wants_any(int criterion) const {
    if (opt_.only.empty()) return true;
    for (const auto& s : opt_.only)
      if (s == kGroups[criterion - 1] || s == std::to_string(criterion) || prefix_in(s, criterion)) return true;
    return false;
  }

  // value <= threshold
  void error(int c, const std::string& name, double value, double threshold, std::string detail, double seconds) {
    if (!wants(c, name)) return;
    const double thr = opt_.tol.value_or(threshold);
    add({c, kGroups[c - 1], name, std::isfinite(value) && value <= thr, value, thr, false, std::move(detail), seconds});
  }
  // value >= threshold, unaffected by the tolerance override
  void at_least(int c, const std::string& name, double value, double threshold, std::string detail, double seconds) {
    if (!wants(c, name)) return;
    add({c, kGroups[c - 1], name, value >= threshold, value, threshold, true, std::move(detail), seconds});
  }
  void failed(int c, const std::string& name, const std::string& why, double seconds) {
    if (!wants(c, name)) return;
    add({c, kGroups[c - 1], name, false, NAN, 0.0, false, why, seconds});
  }

  AcceptanceReport report;

 private:
  bool prefix_in(const std::string& s, int criterion) const;
  void add(CheckResult r) { report.checks.push_back(std::move(r)); }
  const AcceptanceOptions& opt_;
};

// Check names per criterion, used to resolve --only prefixes before running.
const std::vector<std::vector<std::string>> kNames = {
    {"table2."}, {"table4."}, {"classic."}, {"oracle."}, {"structure."}, {"rank."}, {"realize."}, {"ex1.", "ex2."}, {"schottky."}};

bool Suite::prefix_in(const std::string& s, int criterion) const {
  for (const auto& p : kNames[criterion - 1])
    if (p.rfind(s, 0) == 0 || s.rfind(p, 0) == 0) return true;
  return false;
}

std::string fmt(double x) {
  std::ostringstream o;
  o.precision(6);
  o << x;
  return o.str();
}

template <typename Scalar>
double max_abs(const Mat<Scalar>& a) {
  return a.size() ? a.cwiseAbs().maxCoeff() : 0.0;
}

// ---------------------------------------------------------------- criteria 1, 2

void criterion1(Suite& s) {
  for (int k = 2; k <= 5; ++k) {
    const auto t0 = Clock::now();
    const RealFamily f = jorgensen_real_family(k);
    const auto probes = default_probes(8, 16, f.n_step);
    double worst = 0.0;
    std::string detail;
    bool ok = true;
    for (int r = 0; r <= k / 2; ++r) {
      const auto nl = numeric_limit(f, Schedule::power(r), probes);
      if (!nl.converged) {
        ok = false;
        detail += "n^" + std::to_string(r) + " did not converge; ";
        continue;
      }
      const Eigen::VectorXd v = UnipotentLimit<double>::from_matrix(nl.extrapolated).v;
      worst = std::max(worst, (v - table2_expected(k, r)).cwiseAbs().maxCoeff());
    }
    const double secs = since(t0);
    const std::string name = "table2.k" + std::to_string(k);
    if (!ok) s.failed(1, name, detail, secs);
    else s.error(1, name, worst, 1e-3, "max entry error over schedules n^0..n^l", secs);
    s.error(1, name + ".runtime", secs, 5.0, "seconds", secs);
  }
}

void criterion2(Suite& s) {
  for (int k = 1; k <= 3; ++k) {
    const auto t0 = Clock::now();
    const ComplexFamily f = jorgensen_complex_family(k);
    const auto probes = default_probes(8, 16, f.n_step);
    std::vector<int> rows;
    for (int r = 0; r < k; ++r) rows.push_back(r);
    rows.push_back(k + 1);
    for (int r : rows) {
      const auto t1 = Clock::now();
      const std::string name = "table4.k" + std::to_string(k) + ".n^" + std::to_string(r);
      const auto nl = numeric_limit(f, Schedule::power(r), probes);
      if (!nl.converged) {
        s.failed(2, name, "numeric limit not Cauchy (worst ratio " + fmt(nl.worst_ratio) + ")", since(t1));
        continue;
      }
      const auto u = UnipotentLimit<Complex>::from_matrix(nl.extrapolated);
      const auto [v, sv] = table4_expected(k, r);
      const double err = std::max((u.v - v).cwiseAbs().maxCoeff(), std::abs(u.s - sv));
      s.error(2, name, err, 1e-3, "max error in (v, s)", since(t1));
    }
    {
      // The doubled schedule lands on the same coset as the literal one.
      const auto t1 = Clock::now();
      const auto nl = numeric_limit(f, Schedule::power(k + 1, 2), probes);
      const std::string name = "table4.k" + std::to_string(k) + ".2n^" + std::to_string(k + 1);
      if (!nl.converged) {
        s.failed(2, name, "numeric limit not Cauchy", since(t1));
      } else {
        const auto u = UnipotentLimit<Complex>::from_matrix(nl.extrapolated);
        const double err = std::max((u.v + 2.0 * Eigen::VectorXcd::Ones(k)).cwiseAbs().maxCoeff(), std::abs(u.s - Complex(2.0 * k, 0.0)));
        s.error(2, name, err, 1e-3, "max error against v = -2(1,...,1), s = 2k", since(t1));
      }
    }
    const double secs = since(t0);
    s.error(2, "table4.k" + std::to_string(k) + ".runtime", secs, 10.0, "seconds", secs);
  }
}

// ---------------------------------------------------------------- criterion 3

void criterion3(Suite& s) {
  const long long n = 100000;
  {
    const auto t0 = Clock::now();
    Eigen::Matrix2cd target;
    target << 1.0, Complex(0.0, kPi), 0.0, 1.0;
    const double err = (jorgensen_classic_power(n, 1) - target).cwiseAbs().maxCoeff();
    s.error(3, "classic.m1", err, 1e-4, "|rho_n(1) - [[1, i pi], [0, 1]]| at n = 1e5", since(t0));
  }
  {
    const auto t0 = Clock::now();
    Eigen::Matrix2cd target;
    target << 1.0, 1.0, 0.0, 1.0;
    const Eigen::Matrix2cd M = jorgensen_classic_power(n, n);
    const double err = std::min((M - target).cwiseAbs().maxCoeff(), (M + target).cwiseAbs().maxCoeff());
    s.error(3, "classic.mn", err, 1e-4, "|rho_n(n) -/+ [[1, 1], [0, 1]]| at n = 1e5", since(t0));
  }
  {
    const auto t0 = Clock::now();
    double worst = 0.0;
    for (long long m = 1; m <= 10000; ++m) {
      const auto g = jorgensen_classic(m);
      worst = std::max(worst, std::abs(g.M.trace() - 2.0 * std::cosh(jorgensen_omega(m))));
      if (m <= 100) worst = std::max(worst, std::abs(g.M.determinant() - 1.0));
    }
    s.error(3, "classic.trace_det", worst, 1e-12, "trace = 2 cosh(omega_n) for n <= 1e4, det = 1 for n <= 100", since(t0));
  }
}

// ---------------------------------------------------------------- criterion 4

RealFamily random_real_family(std::mt19937_64& rng, bool converge) {
  std::uniform_int_distribution<int> kd(2, 5), pd(0, 2), qd(0, 3), sd(0, 4), coin(0, 1);
  std::uniform_real_distribution<double> ad(0.5, 2.0), cd(0.3, 2.5);
  const int k = kd(rng), l = k / 2;
  std::vector<int> p(l), q(l);
  std::vector<double> a(l), c(l);
  for (int j = 0; j < l; ++j) p[j] = pd(rng);
  std::sort(p.begin(), p.end());
  p[l - 1] = std::max(p[l - 1], 1);
  for (int j = 0; j < l; ++j) a[j] = ad(rng);
  std::sort(a.begin(), a.end());
  for (int j = 0; j < l; ++j) {
    c[j] = cd(rng) * (coin(rng) ? 1.0 : -1.0);
    q[j] = converge ? p[j] + (p[j] == 0 ? qd(rng) : coin(rng)) : qd(rng);
  }
  const double b = ad(rng);
  const int sy = converge ? p[l - 1] + coin(rng) : sd(rng);
  RealFamily f;
  f.k = k;
  f.description = "random real k=" + std::to_string(k);
  f.data_at = [=](long long n) {
    const double nd = static_cast<double>(n);
    GeomDataReal d;
    d.x = Eigen::VectorXd::Zero(k);
    for (int j = 0; j < l; ++j) d.x(2 * j + 1) = a[j] * std::pow(nd, p[j]);
    d.y = b / std::pow(nd, sy);
    for (int j = 0; j < l; ++j) d.theta.push_back(Angle::from_radians(c[j] / std::pow(nd, q[j])));
    return d;
  };
  return f;
}

ComplexFamily random_complex_family(std::mt19937_64& rng, bool converge) {
  std::uniform_int_distribution<int> kd(1, 3), pd(1, 2), qd(0, 4), sd(0, 4), rd(0, 3), coin(0, 1);
  std::uniform_real_distribution<double> ad(0.5, 2.0), cd(0.3, 2.5);
  const int k = kd(rng);
  std::vector<int> p(k), q(k);
  std::vector<double> a(k), c(k);
  for (int j = 0; j < k; ++j) p[j] = pd(rng);
  std::sort(p.begin(), p.end());
  for (int j = 0; j < k; ++j) a[j] = ad(rng);
  std::sort(a.begin(), a.end());
  const int pmax = p[k - 1];
  for (int j = 0; j < k; ++j) {
    c[j] = cd(rng) * (coin(rng) ? 1.0 : -1.0);
    q[j] = converge ? 2 * pmax + coin(rng) : qd(rng);
  }
  const double b = ad(rng), tau = cd(rng);
  const int sy = converge ? pmax + coin(rng) : sd(rng);
  const int rt = converge ? std::min(sy, rd(rng)) : rd(rng);
  ComplexFamily f;
  f.k = k;
  f.description = "random complex k=" + std::to_string(k);
  f.data_at = [=](long long n) {
    const double nd = static_cast<double>(n);
    Eigen::VectorXcd x(k);
    for (int j = 0; j < k; ++j) x(j) = a[j] * std::pow(nd, p[j]);
    std::vector<Angle> th;
    for (int j = 0; j < k; ++j) th.push_back(Angle::from_radians(c[j] / std::pow(nd, q[j])));
    return GeomDataComplex::make(x, tau * std::pow(nd, rt), b / std::pow(nd, sy), th);
  };
  return f;
}

template <typename Family, typename Make, typename Check>
void oracle_field(Suite& s, const std::string& field, Make make, Check check) {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(field == "real" ? 4101 : 4102);
  const auto probes = default_probes(8, 16);
  int disagreements = 0, convergent = 0;
  double worst = 0.0;
  std::string detail;
  for (int i = 0; i < 50; ++i) {
    const Family f = make(rng, i % 2 == 0);
    const auto pr = check(f, probes);
    const auto nl = numeric_limit(f, Schedule::constant(1), probes);
    if (pr.converges != nl.converged) {
      if (!disagreements++) detail = "first disagreement: family " + std::to_string(i) + " (" + f.description + "), predicate " +
                                     (pr.converges ? "converges" : pr.reason) + "; ";
      continue;
    }
    if (!pr.converges) continue;
    ++convergent;
    using Scalar = typename Family::Scalar;
    const Mat<Scalar> P = pr.limit_matrix ? *pr.limit_matrix : pr.limit.element().matrix();
    const double e = max_abs<Scalar>(Mat<Scalar>(P - nl.extrapolated));
    worst = std::max(worst, e);
  }
  detail += std::to_string(convergent) + " of 50 convergent";
  const double secs = since(t0);
  s.error(4, "oracle." + field + ".verdicts", disagreements, 0.0, detail, secs);
  s.error(4, "oracle." + field + ".limits", worst, 1e-4, "max entry difference of the two limits", secs);
}

void criterion4(Suite& s) {
  oracle_field<RealFamily>(s, "real", random_real_family, check_convergence_real);
  oracle_field<ComplexFamily>(s, "complex", random_complex_family, check_convergence_complex);
}

// ---------------------------------------------------------------- criterion 5

struct StructureResiduals {
  double form = 0.0, det = 0.0, power = 0.0, round_trip = 0.0;
};

template <typename Data>
void structure_one(const Data& d, StructureResiduals& r) {
  using Scalar = ScalarOf<Data>;
  const auto g = matrix_from_data(d);
  const auto m = membership_residual(g);
  r.form = std::max(r.form, m.form / m.scale);
  r.det = std::max(r.det, m.det / m.scale);
  Mat<Scalar> P = g.matrix();
  for (int e = 2; e <= 8; ++e) {
    P = P * g.matrix();
    const Mat<Scalar> Q = matrix_from_data(power_data(d, e)).matrix();
    r.power = std::max(r.power, max_abs<Scalar>(Mat<Scalar>(P - Q)) / max_abs<Scalar>(P));
  }
  const Data back = data_from_matrix(g);
  double rt = std::max((back.x - d.x).cwiseAbs().maxCoeff(), std::abs(back.y - d.y));
  for (std::size_t j = 0; j < d.theta.size(); ++j) rt = std::max(rt, std::abs((back.theta[j] - d.theta[j]).radians()));
  if constexpr (std::is_same_v<Data, GeomDataComplex>) {
    rt = std::max(rt, std::abs(back.t - d.t));
    rt = std::max(rt, std::abs((back.phase - d.phase).radians()));
  }
  r.round_trip = std::max(r.round_trip, rt);
}

void criterion5(Suite& s) {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(5150);
  std::uniform_real_distribution<double> xd(-2.0, 2.0), yd(0.05, 1.5), td(-0.5, 0.5);
  std::uniform_int_distribution<int> rk(1, 6), ck(1, 4);
  StructureResiduals r;
  for (int i = 0; i < 500; ++i) {
    GeomDataReal d;
    const int k = rk(rng);
    d.x.resize(k);
    for (int j = 0; j < k; ++j) d.x(j) = xd(rng);
    d.y = yd(rng);
    for (int j = 0; j < k / 2; ++j) d.theta.push_back(Angle::from_turns(td(rng)));
    structure_one(d, r);
  }
  for (int i = 0; i < 500; ++i) {
    const int k = ck(rng);
    Eigen::VectorXcd x(k);
    for (int j = 0; j < k; ++j) x(j) = Complex(xd(rng), xd(rng));
    std::vector<Angle> th;
    for (int j = 0; j < k; ++j) th.push_back(Angle::from_turns(td(rng)));
    const double t = xd(rng), y = yd(rng);
    structure_one(GeomDataComplex::make(x, t, y, th), r);
  }
  const double secs = since(t0);
  const std::string n = "500 real + 500 complex samples";
  s.error(5, "structure.form", r.form, 1e-10, n + ", |M*QM - Q| / (1 + |M|^2)", secs);
  s.error(5, "structure.det", r.det, 1e-10, n + ", |det M - 1| / (1 + |M|^2)", secs);
  s.error(5, "structure.power", r.power, 1e-8, n + ", relative |M^m - M(power data)|, m <= 8", secs);
  s.error(5, "structure.round_trip", r.round_trip, 1e-9, n + ", data -> matrix -> data", secs);
}

// ---------------------------------------------------------------- criterion 6

// Power-law family with dyadic angles in turns so that every power is exact.
RealFamily random_dyadic_family(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> kd(2, 6), pd(1, 2), coin(0, 1), qd(0, 2), cd(0, 5);
  const double cs[] = {1.0, 0.5, 0.25, 0.75, -0.5, -0.25};
  const int k = kd(rng), l = k / 2;
  std::vector<int> p(l), q(l);
  std::vector<double> a(l), c(l);
  for (int j = 0; j < l; ++j) p[j] = pd(rng);
  std::sort(p.begin(), p.end());
  for (int j = 0; j < l; ++j) {
    a[j] = 1.0 + coin(rng);
    c[j] = cs[cd(rng)];
    q[j] = p[j] + qd(rng);
  }
  std::sort(a.begin(), a.end());
  const int sy = p[l - 1] + qd(rng);
  const double b = 1.0 + coin(rng);
  RealFamily f;
  f.k = k;
  f.description = "random dyadic k=" + std::to_string(k);
  f.data_at = [=](long long n) {
    const double nd = static_cast<double>(n);
    GeomDataReal d;
    d.x = Eigen::VectorXd::Zero(k);
    for (int j = 0; j < l; ++j) d.x(2 * j + 1) = a[j] * std::pow(nd, p[j]);
    d.y = b / std::pow(nd, sy);
    for (int j = 0; j < l; ++j) d.theta.push_back(Angle::from_turns(c[j] / std::pow(nd, q[j])));
    return d;
  };
  for (int r = 0; r <= 5; ++r)
    for (int m : {1, 2, 3}) f.schedules.push_back(Schedule::power(r, m));
  return f;
}

// Harvest over the schedules of f that converge numerically.
LimitGroup<double> harvest_convergent(const RealFamily& f, const std::vector<long long>& probes) {
  std::vector<Schedule> ok;
  for (const auto& sc : f.schedules)
    if (numeric_limit(f, sc, probes).converged) ok.push_back(sc);
  if (ok.empty()) return {};
  return harvest_limit_group(f, ok, probes);
}

void criterion6(Suite& s) {
  {
    const auto t0 = Clock::now();
    double excess = -INFINITY, gap = 0.0;
    std::string detail;
    for (int k = 2; k <= 6; ++k) {
      const RealFamily f = jorgensen_real_family(k);
      const auto g = harvest_limit_group(f, f.schedules, default_probes(8, 16, f.n_step));
      excess = std::max(excess, static_cast<double>(g.detected_rank - (k / 2 + 1)));
      gap = std::max(gap, std::abs(static_cast<double>(g.detected_rank - (k / 2 + 1))));
      detail += "k=" + std::to_string(k) + ":" + std::to_string(g.detected_rank) + " ";
    }
    for (auto c : {Counterexample::NonDiscreteGeometric, Counterexample::NonDiscreteGeometricCorrected}) {
      RealFamily f = counterexample_family(c, 4);
      f.schedules = {Schedule::constant(1), Schedule::rounded(1, 2, 1), Schedule::rounded(1, 2, 2), Schedule::rounded(1, 2, 2, 2),
                     Schedule::rounded(1, 2, 1, 2)};
      try {
        const auto g = harvest_convergent(f, default_probes(8, 16, 2));
        excess = std::max(excess, static_cast<double>(g.detected_rank - 3));
        detail += counterexample_name(c) + ":" + std::to_string(g.detected_rank) + " ";
      } catch (const std::exception& e) {
        excess = INFINITY;
        detail += counterexample_name(c) + ": " + e.what() + " ";
      }
    }
    const double secs = since(t0);
    s.error(6, "rank.builtin", excess, 0.0, "detected rank minus floor(k/2)+1; " + detail, secs);
    s.error(6, "rank.builtin_equality", gap, 0.0, "real Jorgensen family attains floor(k/2)+1", secs);
  }
  {
    const auto t0 = Clock::now();
    std::mt19937_64 rng(6006);
    double excess = -INFINITY, vs_bound = -INFINITY;
    int nonzero = 0;
    std::string err;
    for (int i = 0; i < 20; ++i) {
      const RealFamily f = random_dyadic_family(rng);
      const auto probes = default_probes(8, 16);
      try {
        const auto g = harvest_convergent(f, probes);
        const auto rb = rank_bound_real(f, probes);
        excess = std::max(excess, static_cast<double>(g.detected_rank - (f.k / 2 + 1)));
        vs_bound = std::max(vs_bound, static_cast<double>(g.detected_rank - rb.bound));
        if (g.detected_rank > 0) ++nonzero;
      } catch (const std::exception& e) {
        excess = INFINITY;
        if (err.empty()) err = std::string("; family ") + std::to_string(i) + ": " + e.what();
      }
    }
    const double secs = since(t0);
    s.error(6, "rank.random", excess, 0.0, std::to_string(nonzero) + " of 20 families with a nontrivial limit" + err, secs);
    s.error(6, "rank.random_vs_bound", vs_bound, 0.0, "detected rank minus the data-driven bound", secs);
  }
}

// ---------------------------------------------------------------- criterion 7

Rational random_rational(std::mt19937_64& rng, long long max_abs_num_per_den, bool nonzero, bool proper) {
  std::uniform_int_distribution<long long> dd(1, 6);
  for (;;) {
    const long long d = dd(rng);
    const long long bound = proper ? d - 1 : max_abs_num_per_den;
    std::uniform_int_distribution<long long> nd(-bound, bound);
    const long long n = nd(rng);
    if (nonzero && n == 0) continue;
    return Rational(n, d);
  }
}

LatticeSpec random_lattice(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> kd(2, 6);
  LatticeSpec s;
  s.k = kd(rng);
  const int l = s.k / 2;
  std::uniform_int_distribution<int> rd(1, l + 1);
  const int r = rd(rng);
  const bool full = r == l + 1;
  const int nw = full ? l : r;
  for (int i = 0; i < nw; ++i) s.w.push_back(random_rational(rng, 6, true, false));
  for (int i = 0; i < r; ++i) {
    const int len = (full && i == r - 1) ? l : i;
    std::vector<Rational> row;
    for (int j = 0; j < len; ++j) row.push_back(random_rational(rng, 0, false, true));
    s.b.push_back(row);
  }
  if (full) s.c = random_rational(rng, 6, true, false).abs();
  s.validate();
  return s;
}

struct Search {
  int candidates = 0, outside = 0;
  double worst = 0.0;
};

// Elements rho_n(m), m <= cap, close to the unipotent radical must sit near the lattice.
Search extra_element_search(const Realization& rz, const Eigen::MatrixXd& G, long long n, int cap) {
  const double sv = shortest_vector(G).norm;
  const double reach = 4.0 * G.colwise().norm().maxCoeff() + 1.0;
  Search out;
  for (int m = 1; m <= cap; ++m) {
    const GeomDataReal d = rz.family.data_power(n, m);
    bool near = d.y <= 0.02;
    // second-order distance of the translation part from its limit value
    double drift = 0.0;
    for (std::size_t j = 0; j < d.theta.size(); ++j) {
      const double t = d.theta[j].radians();
      near = near && std::abs(t) <= 0.02;
      drift += std::abs(d.x(2 * j + 1)) * (t * t / 2.0 + d.y);
    }
    if (!near || drift > 0.02 * sv) continue;
    const Eigen::VectorXd v = translation_vector(d);
    if (v.norm() > reach) continue;
    ++out.candidates;
    const double res = integer_fit(G, v).residual / sv;
    out.worst = std::max(out.worst, res);
    if (res > 0.1) ++out.outside;
  }
  return out;
}

void criterion7(Suite& s) {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(7007);
  double worst = 0.0;
  int outside = 0, candidates = 0;
  double worst_search = 0.0;
  std::string err;
  for (int i = 0; i < 20; ++i) {
    const LatticeSpec spec = random_lattice(rng);
    try {
      const Realization rz = realize_lattice(spec);
      const auto probes = default_probes(8, 16, rz.family.n_step);
      const auto g = harvest_limit_group(rz.family, rz.schedules, probes);
      const Eigen::MatrixXd G = spec.generators(), H = g.coordinate_matrix();
      worst = std::max({worst, lattice_containment_residual(G, H), lattice_containment_residual(H, G)});
      const long long step = rz.family.n_step;
      const long long n = ((1024 + step - 1) / step) * step;
      const Search sr = extra_element_search(rz, G, n, 1000);
      outside += sr.outside;
      candidates += sr.candidates;
      worst_search = std::max(worst_search, sr.worst);
    } catch (const std::exception& e) {
      worst = INFINITY;
      if (err.empty()) err = "; lattice " + to_json(spec).dump() + ": " + e.what();
    }
  }
  const double secs = since(t0);
  s.error(7, "realize.round_trip", worst, 1e-5, "two-sided integer-fit residual over 20 random lattices" + err, secs);
  s.error(7, "realize.no_extra", outside, 0.0,
          std::to_string(candidates) + " near-unipotent elements with m <= 1000 at n ~ 2^10, worst residual / shortest vector " +
              fmt(worst_search),
          secs);
}

// ---------------------------------------------------------------- criterion 8

void criterion8(Suite& s) {
  const int k = 4;
  {
    const auto t0 = Clock::now();
    const RealFamily f = counterexample_family(Counterexample::NonFaithful, 2);
    const auto M = matrix_from_data(f.data_at(20)).matrix();
    s.error(8, "ex1.identity", max_abs<double>(Eigen::MatrixXd(M - Eigen::MatrixXd::Identity(4, 4))), 1e-3,
            "|rho_{n_r}(1) - I| at convergent depth 20", since(t0));
  }
  {
    const auto t0 = Clock::now();
    const RealFamily f = counterexample_family(Counterexample::NonFaithful, 2);
    const GeomDataReal d = f.data_at(20);
    double worst = 0.0, witness = 0.0;
    for (int i = 1; i <= 8; ++i) {
      const double target = kPi * i / 9.0;
      const Exponent m = rotation_exponent(d.theta[0].radians(), target);
      const GeomDataReal p = power_data(d, m);
      Eigen::MatrixXd R = Eigen::MatrixXd::Identity(4, 4);
      R.block(1, 1, 2, 2) = rotation_matrix_real({Angle::from_radians(target)}, 2);
      worst = std::max(worst, max_abs<double>(Eigen::MatrixXd(matrix_from_data(p).matrix() - R)));
      if (i == 3) witness = std::abs(p.theta[0].radians());
    }
    s.error(8, "ex1.rotations", worst, 1e-2, "8 target angles pi i/9, residual against the rotation", since(t0));
    s.at_least(8, "ex1.witness_angle", (witness > 1e-3 && witness < kPi) ? 1.0 : 0.0, 1.0,
               "limit rotation angle " + fmt(witness) + " must lie in (1e-3, pi)", since(t0));
  }
  auto unipotent_check = [&](Counterexample c, const std::string& tag) {
    const RealFamily f = counterexample_family(c, k);
    const auto probes = default_probes(8, 16, 2);
    {
      const auto t0 = Clock::now();
      const auto nl = numeric_limit(f, Schedule::constant(1), probes);
      const double vn = nl.converged ? UnipotentLimit<double>::from_matrix(nl.extrapolated).v.norm() : 0.0;
      s.at_least(8, tag + ".faithful", vn, 1e-3,
                 nl.converged ? "|v| of the m = 1 limit (must be a nontrivial translation)" : "m = 1 sequence does not converge",
                 since(t0));
    }
    {
      const auto t0 = Clock::now();
      const auto nl = numeric_limit(f, Schedule::rounded(1, 2, 2), probes);
      if (!nl.converged) {
        s.failed(8, tag + ".witness", "schedule round(n^2/2) does not converge", since(t0));
      } else {
        Eigen::VectorXd e = Eigen::VectorXd::Zero(k);
        e(0) = -kPi;
        const double err = (UnipotentLimit<double>::from_matrix(nl.extrapolated).v - e).cwiseAbs().maxCoeff();
        s.error(8, tag + ".witness", err, 1e-3, "round(n^2/2) limit against -pi e_1", since(t0));
      }
    }
  };
  unipotent_check(Counterexample::NonDiscreteGeometric, "ex2");
  unipotent_check(Counterexample::NonDiscreteGeometricCorrected, "ex2.corrected");
  {
    const auto t0 = Clock::now();
    const RealFamily f = counterexample_family(Counterexample::NonDiscreteGeometric, k);
    const auto nl = numeric_limit(f, Schedule::rounded(1, 2, 1), default_probes(8, 16, 2));
    if (!nl.converged) {
      s.failed(8, "ex2.witness_linear", "schedule round(n/2) does not converge", since(t0));
    } else {
      Eigen::VectorXd e = Eigen::VectorXd::Zero(k);
      e(0) = -kPi;
      const double err = (UnipotentLimit<double>::from_matrix(nl.extrapolated).v - e).cwiseAbs().maxCoeff();
      s.error(8, "ex2.witness_linear", err, 1e-3, "round(n/2) limit against -pi e_1 (literal data)", since(t0));
    }
  }
  {
    const auto t0 = Clock::now();
    const RealFamily f = counterexample_family(Counterexample::NonDiscreteGeometricCorrected, k);
    const auto nl = numeric_limit(f, Schedule::rounded(1, 3, 2, 2), default_probes(8, 16, 3));
    if (!nl.converged) {
      s.failed(8, "ex2.corrected.witness_third", "schedule round(n^2/3) n^2 does not converge", since(t0));
    } else {
      Eigen::VectorXd e = Eigen::VectorXd::Zero(k);
      e(2) = -kTwoPi / 3.0;
      const double err = (UnipotentLimit<double>::from_matrix(nl.extrapolated).v - e).cwiseAbs().maxCoeff();
      s.error(8, "ex2.corrected.witness_third", err, 1e-3, "round(n^2/3) n^2 limit against -(2 pi/3) e_3", since(t0));
    }
  }
}

// ---------------------------------------------------------------- criterion 9

template <typename Data>
void schottky_field(Suite& s, const FreeGroupFamily<Data>& fam, const std::string& field, int k) {
  for (long long n : {32LL, 64LL, 128LL}) {
    const auto t0 = Clock::now();
    const Exponent cap = default_exponent_cap(FamilySpec<Data>::field(), k, n);
    const auto c = fam.certify(n, cap, 1000);
    const double m = std::min({c.region.margin, c.partner_margin, c.containment_margin});
    s.at_least(9, "schottky." + field + ".n" + std::to_string(n), c.verdict ? m : -std::abs(m), 1e-12,
               "min margin (region " + fmt(c.region.margin) + ", partner " + fmt(c.partner_margin) + ", containment " +
                   fmt(c.containment_margin) + "), cap " + to_string(cap) + ", commutator distance " + fmt(c.commutator_distance),
               since(t0));
  }
}

void criterion9(Suite& s) {
  const auto t0 = Clock::now();
  schottky_field(s, free_group_family_real(2), "real", 2);
  schottky_field(s, free_group_family_complex(1), "complex", 1);
  {
    const auto t1 = Clock::now();
    const GeomDataReal d = jorgensen_real_family(2).data_at(64);
    const BoundaryRegion<double> big{BoundaryPoint<double>::origin(2), 1.5, RegionShape::Ball};
    const auto ex = returning_exponents(d, big, 64 * 64);
    int bad = 0;
    for (Exponent N : ex)
      if (N % 64 != 0) ++bad;
    s.error(9, "schottky.divisibility", bad, 0.0,
            std::to_string(ex.size()) + " returning exponents N <= n^2 at n = 64, all must be multiples of n", since(t1));
  }
  const double secs = since(t0);
  s.error(9, "schottky.runtime", secs, 60.0, "seconds", secs);
}

}  // namespace

// ---------------------------------------------------------------- public

Eigen::VectorXd table2_expected(int k, int r) {
  const int l = k / 2;
  if (r < 0 || r > l) throw std::invalid_argument("table2_expected: r out of range");
  Eigen::VectorXd v = Eigen::VectorXd::Zero(k);
  if (r < l) {
    v(2 * r) = -kTwoPi;
  } else {
    for (int j = 0; j < l; ++j) v(2 * j + 1) = -1.0;
  }
  return v;
}

std::pair<Eigen::VectorXcd, Complex> table4_expected(int k, int r) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(k);
  const Complex i2pi(0.0, kTwoPi);
  if (r == k + 1) return {Eigen::VectorXcd::Constant(k, -1.0), Complex(k / 2.0, 0.0)};
  if (r < 0 || r >= k) throw std::invalid_argument("table4_expected: r out of range");
  if (r == k - 1) return {v, Complex(0.0, -(k + 2) * kPi)};
  v(r) = -i2pi;
  v(k - 1) = i2pi;
  return {v, Complex(4.0 * kPi * kPi, 0.0)};
}

bool AcceptanceReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

bool AcceptanceReport::criterion_ran(int c) const {
  return std::any_of(checks.begin(), checks.end(), [c](const CheckResult& r) { return r.criterion == c; });
}

bool AcceptanceReport::criterion_passed(int c) const {
  return criterion_ran(c) &&
         std::all_of(checks.begin(), checks.end(), [c](const CheckResult& r) { return r.criterion != c || r.passed; });
}

json AcceptanceReport::to_json() const {
  json cs = json::array(), crit = json::array();
  for (const auto& c : checks) {
    cs.push_back({{"criterion", c.criterion},
                  {"group", c.group},
                  {"name", c.name},
                  {"passed", c.passed},
                  {"value", std::isfinite(c.value) ? json(c.value) : json(nullptr)},
                  {"threshold", c.threshold},
                  {"comparison", c.at_least ? ">=" : "<="},
                  {"detail", c.detail},
                  {"seconds", c.seconds}});
  }
  for (int i = 1; i <= 9; ++i)
    if (criterion_ran(i)) crit.push_back({{"criterion", i}, {"title", criterion_title(i)}, {"passed", criterion_passed(i)}});
  return {{"passed", passed()}, {"criteria", crit}, {"checks", cs}};
}

std::vector<std::string> acceptance_groups() {
  return {"tables", "classic", "oracle", "structure", "rank", "realize", "counterexamples", "schottky"};
}

std::string criterion_title(int c) {
  if (c < 1 || c > 9) throw std::invalid_argument("criterion out of range");
  return kTitles[c - 1];
}

std::string criterion_group(int c) {
  if (c < 1 || c > 9) throw std::invalid_argument("criterion out of range");
  return kGroups[c - 1];
}

AcceptanceReport run_acceptance(const AcceptanceOptions& options) {
  Suite s(options);
  for (const auto& o : options.only) {
    bool hit = false;
    for (int c = 1; c <= 9; ++c) {
      AcceptanceOptions one;
      one.only = {o};
      if (Suite(one).wants_any(c)) hit = true;
    }
    if (!hit) throw std::invalid_argument("--only '" + o + "' matches no check");
  }
  void (*const run[])(Suite&) = {criterion1, criterion2, criterion3, criterion4, criterion5,
                                 criterion6, criterion7, criterion8, criterion9};
  for (int c = 1; c <= 9; ++c)
    if (s.wants_any(c)) run[c - 1](s);
  return s.report;
}

}  // namespace hyplim
