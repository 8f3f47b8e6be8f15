#include "hyplim/families.hpp"

#include <cmath>
#include <stdexcept>

namespace hyplim {

// ---------------------------------------------------------------------------
// classic

Complex jorgensen_omega(long long n) {
  if (n < 1) throw std::invalid_argument("jorgensen_classic: n must be positive");
  const double nd = static_cast<double>(n);
  return {1.0 / (nd * nd), kPi / nd};
}

ClassicJorgensenElement jorgensen_classic(long long n) { return {n, jorgensen_classic_power(n, 1)}; }

Eigen::Matrix2cd jorgensen_classic_power(long long n, Exponent m) {
  const Complex w = jorgensen_omega(n);
  const double nd = static_cast<double>(n);
  // m * omega with the imaginary part reduced exactly: m pi / n modulo 2 pi
  const Exponent r = ((m % (2 * n)) + 2 * n) % (2 * n);
  const Complex mw(to_double(m) * w.real(), kPi * static_cast<double>(r) / nd);
  Eigen::Matrix2cd M;
  M << std::exp(mw), nd * std::sinh(mw), 0.0, std::exp(-mw);
  return M;
}

// ---------------------------------------------------------------------------
// exact angles: sum of coeff / n^power turns

namespace {

struct TurnTerm {
  Rational coeff;
  int power;
};
using TurnSum = std::vector<TurnTerm>;

Exponent gcd128(Exponent a, Exponent b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b) {
    const Exponent t = a % b;
    a = b;
    b = t;
  }
  return a;
}

Angle turn_angle(const TurnSum& s, long long n, Exponent m) {
  Exponent L = 1;
  std::vector<Exponent> dens;
  for (const auto& t : s) {
    dens.push_back(checked_mul(t.coeff.den(), checked_pow(n, t.power)));
    L = checked_mul(L / gcd128(L, dens.back()), dens.back());
  }
  Exponent num = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const Exponent add = checked_mul(s[i].coeff.num(), L / dens[i]);
    if (__builtin_add_overflow(num, add, &num)) throw std::overflow_error("turn_angle overflow");
  }
  return Angle::from_turns(exact_fraction(m, num, L));
}

TurnSum half_negated_sum(const std::vector<TurnSum>& theta) {
  TurnSum p;
  for (const auto& s : theta)
    for (const auto& t : s) p.push_back({t.coeff * Rational(-1, 2), t.power});
  return p;
}

void require_positive(Exponent m) {
  if (m <= 0) throw HyplimError("power exponent must be positive");
}

struct RealRecipe {
  int k = 0;
  std::function<Eigen::VectorXd(long long)> x;
  std::function<double(long long)> y;
  std::vector<TurnSum> theta;
};

GeomDataReal evaluate(const RealRecipe& r, long long n, Exponent m) {
  require_positive(m);
  GeomDataReal d;
  d.x = r.x(n);
  d.y = r.y(n) * to_double(m);
  for (const auto& s : r.theta) d.theta.push_back(turn_angle(s, n, m));
  return d;
}

RealFamily from_recipe(const RealRecipe& r) {
  RealFamily f;
  f.k = r.k;
  f.data_at = [r](long long n) { return evaluate(r, n, 1); };
  f.power_at = [r](long long n, Exponent m) { return evaluate(r, n, m); };
  return f;
}

Eigen::VectorXd jorgensen_x(int k, double value) {
  Eigen::VectorXd x = Eigen::VectorXd::Zero(k);
  for (int i = 1; i < 2 * (k / 2); i += 2) x(i) = value;
  return x;
}

}  // namespace

// ---------------------------------------------------------------------------

RealFamily jorgensen_real_family(int k) {
  if (k < 2) throw std::invalid_argument("jorgensen_real_family: k must be at least 2");
  const int l = k / 2;
  RealRecipe r;
  r.k = k;
  r.x = [k](long long n) { return jorgensen_x(k, static_cast<double>(n)); };
  r.y = [l](long long n) { return 1.0 / std::pow(static_cast<double>(n), l + 1); };
  for (int j = 1; j <= l; ++j) r.theta.push_back({{Rational(1), j}});
  RealFamily f = from_recipe(r);
  f.description = "jorgensen-real k=" + std::to_string(k);
  f.n_min = 2;
  for (int j = 0; j <= l; ++j) f.schedules.push_back(Schedule::power(j));
  return f;
}

ComplexFamily jorgensen_complex_family(int k) {
  if (k < 1) throw std::invalid_argument("jorgensen_complex_family: k must be at least 1");
  std::vector<TurnSum> theta(k);
  if (k == 1) {
    theta[0] = {{Rational(1), 2}};
  } else {
    theta[0] = {{Rational(1), 1}, {Rational(1), k + 1}};
    for (int j = 2; j < k; ++j) theta[j - 1] = {{Rational(1), j}};
    for (int j = 1; j < k; ++j) theta[k - 1].push_back({Rational(-1), j});
  }
  const TurnSum phase = half_negated_sum(theta);
  auto eval = [k, theta, phase](long long n, Exponent m) {
    require_positive(m);
    GeomDataComplex d;
    d.x = Eigen::VectorXcd::Constant(k, Complex(static_cast<double>(n), 0.0));
    d.t = 0.0;
    d.y = to_double(m) / std::pow(static_cast<double>(n), k + 2);
    for (const auto& s : theta) d.theta.push_back(turn_angle(s, n, m));
    d.phase = turn_angle(phase, n, m);
    return d;
  };
  ComplexFamily f;
  f.k = k;
  f.description = "jorgensen-complex k=" + std::to_string(k);
  f.n_min = 2;
  f.data_at = [eval](long long n) { return eval(n, 1); };
  f.power_at = eval;
  for (int j = 0; j < k; ++j) f.schedules.push_back(Schedule::power(j));
  f.schedules.push_back(Schedule::power(k + 1, 2));
  return f;
}

std::vector<Schedule> jorgensen_complex_extra_schedules(int k) { return {Schedule::power(k), Schedule::power(k + 1)}; }

// ---------------------------------------------------------------------------
// counterexamples

Counterexample parse_counterexample(const std::string& s) {
  if (s == "non-faithful") return Counterexample::NonFaithful;
  if (s == "non-discrete") return Counterexample::NonDiscreteGeometric;
  if (s == "non-discrete-corrected") return Counterexample::NonDiscreteGeometricCorrected;
  throw std::invalid_argument("unknown counterexample '" + s + "'");
}

std::string counterexample_name(Counterexample c) {
  switch (c) {
    case Counterexample::NonFaithful: return "non-faithful";
    case Counterexample::NonDiscreteGeometric: return "non-discrete";
    case Counterexample::NonDiscreteGeometricCorrected: return "non-discrete-corrected";
  }
  return "?";
}

double default_irrational_angle() { return kTwoPi * (std::sqrt(5.0) - 1.0) / 2.0; }

std::vector<long long> convergent_denominators(double alpha, int depth) {
  if (depth < 1 || depth > 20) throw std::invalid_argument("convergent depth must lie in 1..20");
  double r = alpha - std::floor(alpha);
  if (r < 1e-12 || r > 1.0 - 1e-12) throw std::invalid_argument("angle must be an irrational multiple of pi");
  std::vector<long long> q;
  long long qm2 = 0, qm1 = 1;
  for (int it = 0; it < 60 && static_cast<int>(q.size()) < depth; ++it) {
    if (r < 1e-12) throw std::invalid_argument("angle must be an irrational multiple of pi");
    const double inv = 1.0 / r;
    const double a = std::floor(inv);
    r = inv - a;
    const long long qn = static_cast<long long>(a) * qm1 + qm2;
    qm2 = qm1;
    qm1 = qn;
    if (q.empty() || qn > q.back()) q.push_back(qn);
  }
  if (static_cast<int>(q.size()) < depth) throw std::invalid_argument("angle must be an irrational multiple of pi");
  return q;
}

Exponent rotation_exponent(double eps, double target) {
  if (eps == 0.0) throw std::invalid_argument("rotation_exponent: zero step");
  double t = std::fmod(target, kTwoPi);
  if (eps > 0 && t < 0) t += kTwoPi;
  if (eps < 0 && t > 0) t -= kTwoPi;
  const double m = std::llround(t / eps);
  return static_cast<Exponent>(std::max(1.0, m));
}

RealFamily counterexample_family(Counterexample variant, int k, std::optional<double> theta) {
  if (k < 2) throw std::invalid_argument("counterexample_family: k must be at least 2");
  const int l = k / 2;
  if (variant == Counterexample::NonFaithful) {
    const double th = theta.value_or(default_irrational_angle());
    const double alpha = th / kTwoPi;
    const auto q = convergent_denominators(alpha, 20);
    RealFamily f;
    f.k = k;
    f.description = "non-faithful theta=" + std::to_string(th);
    f.n_min = 1;
    f.data_at = [k, q, alpha](long long r) {
      if (r < 1 || r > static_cast<long long>(q.size())) throw std::out_of_range("convergent index out of range");
      const long long n = q[r - 1];
      GeomDataReal d;
      d.x = Eigen::VectorXd::Zero(k);
      d.y = 1.0 / (static_cast<double>(n) * static_cast<double>(n));
      d.theta.assign(k / 2, Angle());
      const double frac = std::fmod(static_cast<long double>(n) * alpha, 1.0L);
      d.theta[0] = Angle::from_turns(frac);
      return d;
    };
    f.schedules = {Schedule::constant(1)};
    return f;
  }
  RealRecipe r;
  r.k = k;
  r.x = [k](long long n) { return jorgensen_x(k, static_cast<double>(n)); };
  RealFamily f;
  if (variant == Counterexample::NonDiscreteGeometric) {
    r.y = [l](long long n) { return 1.0 / std::pow(static_cast<double>(n), 2 * l + 1); };
    for (int j = 1; j <= l; ++j) r.theta.push_back({{Rational(1), 2 * j}});
    f = from_recipe(r);
    f.description = "non-discrete k=" + std::to_string(k);
  } else {
    r.y = [l](long long n) { return 1.0 / std::pow(static_cast<double>(n), 2 * l + 2); };
    r.theta.push_back({{Rational(1), 1}, {Rational(1), 3}});
    for (int j = 2; j <= l; ++j) r.theta.push_back({{Rational(1), 2 * j + 1}});
    f = from_recipe(r);
    f.description = "non-discrete-corrected k=" + std::to_string(k);
  }
  f.n_min = 2;
  f.schedules = {Schedule::constant(1)};
  return f;
}

// ---------------------------------------------------------------------------
// lattices

void LatticeSpec::validate() const {
  if (k < 2) throw std::invalid_argument("lattice: k must be at least 2");
  const int l = k / 2;
  const int r = rank();
  if (r < 1) throw std::invalid_argument("lattice: empty generator list");
  if (r > l + 1) throw HyplimError("lattice rank exceeds floor(k/2)+1");
  const int odd = c ? r - 1 : r;
  if (c && r != l + 1) throw std::invalid_argument("lattice: translation generator requires rank floor(k/2)+1");
  if (!c && r > l) throw HyplimError("lattice rank exceeds floor(k/2) without a translation generator");
  if (static_cast<int>(w.size()) != (c ? l : odd)) throw std::invalid_argument("lattice: wrong number of diagonal entries");
  for (const auto& x : w)
    if (x.is_zero()) throw std::invalid_argument("lattice: zero diagonal entry (generators dependent)");
  for (int i = 0; i < r; ++i) {
    const int expect = (c && i == r - 1) ? l : i;
    if (static_cast<int>(b[i].size()) != expect) throw std::invalid_argument("lattice: malformed b row " + std::to_string(i + 1));
    for (const auto& x : b[i])
      if (!(x.abs() < Rational(1))) throw std::invalid_argument("lattice: |b_{i,j}| must be < 1");
  }
  if (c && !(Rational(0) < *c)) throw std::invalid_argument("lattice: c must be positive");
}

Eigen::MatrixXd LatticeSpec::generators() const {
  validate();
  const int r = rank();
  Eigen::MatrixXd G = Eigen::MatrixXd::Zero(k, r);
  for (int i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < b[i].size(); ++j) G(2 * j, i) = -kTwoPi * (b[i][j] * w[j]).to_double();
    if (c && i == r - 1) {
      for (std::size_t j = 0; j < w.size(); ++j) G(2 * j + 1, i) = -(*c * w[j]).to_double();
    } else {
      G(2 * i, i) = -kTwoPi * w[i].to_double();
    }
  }
  return G;
}

LatticeSpec LatticeSpec::from_generators(int k, const Eigen::MatrixXd& Gin) {
  if (k < 2 || Gin.rows() != k) throw std::invalid_argument("lattice: generator rows must equal k");
  const int l = k / 2;
  const int r = static_cast<int>(Gin.cols());
  if (r < 1) throw std::invalid_argument("lattice: empty generator list");
  if (r > l + 1) throw HyplimError("lattice rank exceeds floor(k/2)+1");
  Eigen::MatrixXd G = Gin;
  const double tol = 1e-9 * (1.0 + G.cwiseAbs().maxCoeff());
  // the last generator carries the translation part when it has even entries
  bool translation = false;
  for (int i = 1; i < k; i += 2)
    if (std::abs(G(i, r - 1)) > tol) translation = true;
  if ((k % 2 == 1) && G.row(k - 1).cwiseAbs().maxCoeff() > tol)
    throw std::invalid_argument("lattice not in normal form: trailing coordinate must vanish");
  const int odd = translation ? r - 1 : r;
  if (translation && r != l + 1) throw std::invalid_argument("lattice not in normal form: translation generator requires rank floor(k/2)+1");
  if (!translation && r > l) throw HyplimError("lattice rank exceeds floor(k/2) in the rotation span");
  for (int i = 0; i < odd; ++i)
    for (int row = 0; row < k; ++row) {
      const bool allowed = row % 2 == 0 && row / 2 <= i;
      if (!allowed && std::abs(G(row, i)) > tol)
        throw std::invalid_argument("lattice not in normal form: generator " + std::to_string(i + 1));
    }
  // W(i, j) = w_{i,j} for odd generators and the odd part of the last
  std::vector<std::vector<Rational>> W(r);
  for (int i = 0; i < r; ++i) {
    const int cols = (translation && i == r - 1) ? l : i + 1;
    for (int j = 0; j < cols; ++j) W[i].push_back(Rational::from_double(G(2 * j, i) / -kTwoPi));
  }
  LatticeSpec s;
  s.k = k;
  for (int i = 0; i < odd; ++i) {
    if (W[i][i].is_zero()) throw std::invalid_argument("lattice: generators are dependent");
    s.w.push_back(W[i][i]);
  }
  if (translation) {
    std::optional<Rational> c;
    for (int j = 0; j < l; ++j) {
      const Rational cj = Rational::from_double(-G(2 * j + 1, r - 1) / s.w[j].to_double());
      if (c && !(*c == cj)) throw std::invalid_argument("lattice not in normal form: even part not parallel to (w_11, ..., w_ll)");
      c = cj;
    }
    if (c->is_zero()) throw std::invalid_argument("lattice: generators are dependent");
    if (*c < Rational(0)) {
      c = -*c;
      for (auto& x : W[r - 1]) x = -x;
    }
    s.c = c;
  }
  // reduce off-diagonal ratios into (-1, 1)
  for (int i = 0; i < r; ++i) {
    const int cols = static_cast<int>(W[i].size()) - ((translation && i == r - 1) ? 0 : 1);
    for (int j = cols - 1; j >= 0; --j) {
      const Rational bij = W[i][j] / s.w[j];
      const long long t = bij.num() / bij.den();  // truncation
      if (t != 0)
        for (int q = 0; q <= j; ++q) W[i][q] = W[i][q] - Rational(t) * W[j][q];
    }
    std::vector<Rational> row;
    for (int j = 0; j < cols; ++j) row.push_back(W[i][j] / s.w[j]);
    s.b.push_back(row);
  }
  s.validate();
  return s;
}

Realization realize_lattice(const LatticeSpec& spec) {
  spec.validate();
  const int k = spec.k, l = k / 2, r = spec.rank();
  const bool full = spec.c.has_value();
  const int blocks = full ? l : r;  // blocks carrying data
  // d_i, D_i, c
  std::vector<long long> d(r + 2, 1), D(r + 2, 1);
  long long step = 1;
  for (int i = 0; i < r; ++i)
    for (const auto& x : spec.b[i]) {
      d[i + 1] = checked_lcm(d[i + 1], x.den());
      step = checked_lcm(step, x.den());
    }
  for (int i = 2; i <= r; ++i) D[i] = static_cast<long long>(checked_mul(D[i - 1], d[i]));
  // theta_i = 1/(D_{i-1} n^i) + sum_{j>i} b_{j,i} / (D_{j-1} n^j) turns
  std::vector<TurnSum> theta(l);
  for (int i = 1; i <= blocks; ++i) {
    theta[i - 1].push_back({Rational(1, D[i - 1]), i});
    for (int j = i + 1; j <= r; ++j) theta[i - 1].push_back({spec.b[j - 1][i - 1] / Rational(D[j - 1]), j});
  }
  RealRecipe rec;
  rec.k = k;
  rec.theta = theta;
  std::vector<double> w;
  for (const auto& x : spec.w) w.push_back(x.to_double());
  rec.x = [k, w](long long n) {
    Eigen::VectorXd x = Eigen::VectorXd::Zero(k);
    for (std::size_t i = 0; i < w.size(); ++i) x(2 * i + 1) = static_cast<double>(n) * w[i];
    return x;
  };
  Realization out;
  if (full) {
    const double c = spec.c->to_double();
    const double Dl = static_cast<double>(D[l]);
    rec.y = [c, Dl, l](long long n) { return c / (Dl * std::pow(static_cast<double>(n), l + 1)); };
    out.family = from_recipe(rec);
    for (int q = 0; q <= l; ++q) out.schedules.push_back(Schedule::power(q, D[q]));
  } else {
    const double Dr = static_cast<double>(D[r - 1]);
    rec.y = [Dr, r](long long n) { return 1.0 / (Dr * std::pow(static_cast<double>(n), r + 0.5)); };
    out.family = from_recipe(rec);
    out.family.rate_exponents = {0.5, 1.0, 1.5, 2.0, 2.5};
    for (int q = 0; q < r; ++q) out.schedules.push_back(Schedule::power(q, D[q]));
  }
  out.family.description = "realized lattice k=" + std::to_string(k) + " rank=" + std::to_string(r);
  out.family.n_step = step;
  out.family.n_min = step;
  out.family.schedules = out.schedules;
  return out;
}

}  // namespace hyplim
