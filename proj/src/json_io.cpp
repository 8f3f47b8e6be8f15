#include "hyplim/json_io.hpp"

#include <cmath>
#include <cstdio>

#include "hyplim/expression.hpp"

namespace hyplim {

namespace {

[[noreturn]] void bad(const std::string& what) { throw std::invalid_argument("json: " + what); }

const json& need(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing key '") + key + "'");
  return j.at(key);
}

double number(const json& j) {
  if (!j.is_number()) bad("expected a number");
  return j.get<double>();
}

json scalar_json(double x) { return x; }
json scalar_json(Complex z) { return json::array({z.real(), z.imag()}); }

template <typename Scalar>
Scalar scalar_from(const json& j) {
  if constexpr (is_complex_v<Scalar>) {
    if (j.is_number()) return Complex(j.get<double>(), 0.0);
    if (!j.is_array() || j.size() != 2) bad("complex entries are [re, im]");
    return Complex(number(j[0]), number(j[1]));
  } else {
    if (j.is_array()) {
      if (j.size() != 2 || number(j[1]) != 0.0) bad("real field entries must be real");
      return number(j[0]);
    }
    return number(j);
  }
}

template <typename Scalar>
json vector_json(const Vec<Scalar>& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(scalar_json(v(i)));
  return a;
}

template <typename Scalar>
Vec<Scalar> vector_from(const json& j) {
  if (!j.is_array()) bad("expected an array");
  Vec<Scalar> v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = scalar_from<Scalar>(j[i]);
  return v;
}

template <typename Scalar>
json element_json(const GroupElement<Scalar>& g) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < g.matrix().rows(); ++i) rows.push_back(vector_json<Scalar>(g.matrix().row(i).transpose()));
  return {{"field", FieldTraits<Scalar>::name}, {"k", g.k()}, {"rows", rows}};
}

template <typename Scalar>
json point_json(const BoundaryPoint<Scalar>& p) {
  json j = {{"field", FieldTraits<Scalar>::name}, {"k", p.k()}};
  if (p.is_infinity()) {
    j["infinity"] = true;
    return j;
  }
  j["a"] = vector_json<Scalar>(p.a());
  if constexpr (is_complex_v<Scalar>) j["b"] = p.b();
  return j;
}

json angles_json(const std::vector<Angle>& a) {
  json r = json::array();
  for (const Angle& t : a) r.push_back(t.radians());
  return r;
}

std::vector<Angle> angles_from(const json& j) {
  if (!j.is_array()) bad("theta must be an array");
  std::vector<Angle> r;
  for (const auto& e : j) r.push_back(Angle::from_radians(number(e)));
  return r;
}

std::string expr_text(const json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  bad("parametric entries must be expressions (strings) or integers");
}

std::vector<Expression> expr_list(const json& j) {
  if (!j.is_array()) bad("expected an array of expressions");
  std::vector<Expression> r;
  for (const auto& e : j) r.push_back(Expression::parse(expr_text(e)));
  return r;
}

template <typename F>
void apply_common(F& f, const json& j) {
  if (j.contains("n_min")) f.n_min = j.at("n_min").get<long long>();
  if (j.contains("n_step")) f.n_step = j.at("n_step").get<long long>();
  if (f.n_min < 1 || f.n_step < 1) bad("n_min and n_step must be positive");
  if (j.contains("rate_exponents")) f.rate_exponents = j.at("rate_exponents").get<std::vector<double>>();
  if (j.contains("schedules"))
    for (const auto& s : j.at("schedules")) f.schedules.push_back(schedule_from_expression(expr_text(s), f.k));
}

AnyFamily parametric_family(const json& j) {
  const FieldTag field = field_of(j);
  const int k = need(j, "k").get<int>();
  const auto y = Expression::parse(expr_text(need(j, "y")));
  const auto theta = expr_list(need(j, "theta"));
  const json& xj = need(j, "x");
  if (!xj.is_array() || static_cast<int>(xj.size()) != k) bad("x must have k entries");
  auto vars = [k](long long n) {
    return std::map<std::string, double>{{"n", static_cast<double>(n)}, {"k", k}, {"l", k / 2}};
  };
  std::string desc = "parametric " + field_name(field) + " k=" + std::to_string(k);
  if (field == FieldTag::Real) {
    if (static_cast<int>(theta.size()) != k / 2) bad("theta must have floor(k/2) entries");
    const auto x = expr_list(xj);
    RealFamily f;
    f.k = k;
    f.description = desc;
    f.data_at = [=](long long n) {
      const auto v = vars(n);
      GeomDataReal d;
      d.x.resize(k);
      for (int i = 0; i < k; ++i) d.x(i) = x[i].evaluate(v);
      d.y = y.evaluate(v);
      for (const auto& t : theta) d.theta.push_back(Angle::from_radians(t.evaluate(v)));
      d.validate();
      return d;
    };
    apply_common(f, j);
    return f;
  }
  if (static_cast<int>(theta.size()) != k) bad("theta must have k entries");
  std::vector<std::pair<Expression, Expression>> x;
  for (const auto& e : xj) {
    if (e.is_array()) {
      if (e.size() != 2) bad("complex x entries are [re, im]");
      x.emplace_back(Expression::parse(expr_text(e[0])), Expression::parse(expr_text(e[1])));
    } else {
      x.emplace_back(Expression::parse(expr_text(e)), Expression::parse("0"));
    }
  }
  const auto t = Expression::parse(j.contains("t") ? expr_text(j.at("t")) : "0");
  ComplexFamily f;
  f.k = k;
  f.description = desc;
  f.data_at = [=](long long n) {
    const auto v = vars(n);
    Eigen::VectorXcd xs(k);
    for (int i = 0; i < k; ++i) xs(i) = Complex(x[i].first.evaluate(v), x[i].second.evaluate(v));
    std::vector<Angle> th;
    for (const auto& e : theta) th.push_back(Angle::from_radians(e.evaluate(v)));
    return GeomDataComplex::make(xs, t.evaluate(v), y.evaluate(v), th);
  };
  apply_common(f, j);
  return f;
}

}  // namespace

std::string format_number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string format_complex(Complex z) {
  const double im = z.imag();
  std::string s = format_number(z.real());
  s += (std::signbit(im) ? "-" : "+");
  s += format_number(std::abs(im));
  return s + "i";
}

FieldTag field_of(const json& j) { return j.contains("field") ? parse_field(j.at("field").get<std::string>()) : FieldTag::Real; }

json to_json(const GroupElement<double>& g) { return element_json(g); }
json to_json(const GroupElement<Complex>& g) { return element_json(g); }

template <typename Scalar>
GroupElement<Scalar> group_element_from_json(const json& j) {
  if (field_of(j) != FieldTraits<Scalar>::tag) bad("field mismatch");
  const json& rows = need(j, "rows");
  if (!rows.is_array() || rows.empty()) bad("rows must be a non-empty array");
  const auto n = static_cast<Eigen::Index>(rows.size());
  Mat<Scalar> M(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Vec<Scalar> r = vector_from<Scalar>(rows[static_cast<std::size_t>(i)]);
    if (r.size() != n) bad("matrix must be square");
    M.row(i) = r.transpose();
  }
  if (j.contains("k") && j.at("k").get<int>() != n - 2) bad("k does not match the matrix size");
  return GroupElement<Scalar>(M);
}
template GroupElement<double> group_element_from_json<double>(const json&);
template GroupElement<Complex> group_element_from_json<Complex>(const json&);

json to_json(const BoundaryPoint<double>& p) { return point_json(p); }
json to_json(const BoundaryPoint<Complex>& p) { return point_json(p); }

template <typename Scalar>
BoundaryPoint<Scalar> boundary_point_from_json(const json& j) {
  if (j.contains("infinity") && j.at("infinity").get<bool>()) return BoundaryPoint<Scalar>::infinity(need(j, "k").get<int>());
  const Vec<Scalar> a = vector_from<Scalar>(need(j, "a"));
  if (j.contains("k") && j.at("k").get<int>() != a.size()) bad("k does not match a");
  const double b = j.contains("b") ? number(j.at("b")) : 0.0;
  return BoundaryPoint<Scalar>::finite(a, b);
}
template BoundaryPoint<double> boundary_point_from_json<double>(const json&);
template BoundaryPoint<Complex> boundary_point_from_json<Complex>(const json&);

json to_json(const GeomDataReal& d) {
  return {{"k", d.k()}, {"x", vector_json<double>(d.x)}, {"y", d.y}, {"theta", angles_json(d.theta)}};
}

json to_json(const GeomDataComplex& d) {
  return {{"k", d.k()}, {"x", vector_json<Complex>(d.x)}, {"t", d.t},
          {"y", d.y}, {"theta", angles_json(d.theta)}, {"phase", d.phase.radians()}};
}

GeomDataReal geomdata_real_from_json(const json& j) {
  GeomDataReal d;
  d.x = vector_from<double>(need(j, "x"));
  d.y = number(need(j, "y"));
  d.theta = angles_from(need(j, "theta"));
  if (j.contains("k") && j.at("k").get<int>() != d.k()) bad("k does not match x");
  d.validate();
  return d;
}

GeomDataComplex geomdata_complex_from_json(const json& j) {
  GeomDataComplex d = GeomDataComplex::make(vector_from<Complex>(need(j, "x")), number(need(j, "t")), number(need(j, "y")),
                                            angles_from(need(j, "theta")));
  if (j.contains("phase")) d.phase = Angle::from_radians(number(j.at("phase")));
  if (j.contains("k") && j.at("k").get<int>() != d.k()) bad("k does not match x");
  d.validate();
  return d;
}

json to_json(const UnipotentLimit<double>& u) {
  return {{"v", vector_json<double>(u.v)}, {"matrix", to_json(u.element())}};
}

json to_json(const UnipotentLimit<Complex>& u) {
  return {{"v", vector_json<Complex>(u.v)}, {"s", scalar_json(u.s)}, {"matrix", to_json(u.element())}};
}

json to_json(const LatticeSpec& s) {
  json w = json::array(), b = json::array();
  for (const auto& r : s.w) w.push_back(r.str());
  for (const auto& row : s.b) {
    json a = json::array();
    for (const auto& r : row) a.push_back(r.str());
    b.push_back(a);
  }
  json j = {{"k", s.k}, {"w", w}, {"b", b}};
  if (s.c) j["c"] = s.c->str();
  return j;
}

namespace {
Rational rational_from(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  if (j.is_number()) return Rational::from_double(j.get<double>());
  bad("expected a rational");
}
}  // namespace

LatticeSpec lattice_from_json(const json& j) {
  const int k = need(j, "k").get<int>();
  if (j.contains("generators")) {
    const json& g = j.at("generators");
    if (!g.is_array() || g.empty()) bad("generators must be a non-empty array");
    Eigen::MatrixXd G(k, static_cast<Eigen::Index>(g.size()));
    for (std::size_t c = 0; c < g.size(); ++c) {
      const Eigen::VectorXd v = vector_from<double>(g[c]);
      if (v.size() != k) bad("every generator needs k coordinates");
      G.col(static_cast<Eigen::Index>(c)) = v;
    }
    return LatticeSpec::from_generators(k, G);
  }
  LatticeSpec s;
  s.k = k;
  for (const auto& e : need(j, "w")) s.w.push_back(rational_from(e));
  for (const auto& row : need(j, "b")) {
    std::vector<Rational> r;
    for (const auto& e : row) r.push_back(rational_from(e));
    s.b.push_back(r);
  }
  if (j.contains("c") && !j.at("c").is_null()) s.c = rational_from(j.at("c"));
  s.validate();
  return s;
}

json to_json(const LimitReport& r) {
  json j = {{"family", r.family},   {"schedule", r.schedule},   {"verdict", r.verdict},
            {"limit", r.limit},     {"residuals", r.residuals}, {"extrapolation_error", r.extrapolation_error}};
  if (!r.reason.empty()) j["reason"] = r.reason;
  return j;
}

LimitReport limit_report_from_json(const json& j) {
  LimitReport r;
  r.family = need(j, "family").get<std::string>();
  r.schedule = need(j, "schedule").get<std::string>();
  r.verdict = need(j, "verdict").get<std::string>();
  if (r.verdict != "Converges" && r.verdict != "Diverges" && r.verdict != "NotCauchy") bad("unknown verdict");
  r.limit = need(j, "limit");
  r.residuals = need(j, "residuals").get<std::vector<double>>();
  r.extrapolation_error = number(need(j, "extrapolation_error"));
  if (j.contains("reason")) r.reason = j.at("reason").get<std::string>();
  return r;
}

std::vector<std::string> builtin_family_names() {
  return {"jorgensen-real", "jorgensen-complex", "non-faithful", "non-discrete", "non-discrete-corrected"};
}

AnyFamily builtin_family(const std::string& name, int k, std::optional<double> theta) {
  if (name == "jorgensen-real") return jorgensen_real_family(k);
  if (name == "jorgensen-complex") return jorgensen_complex_family(k);
  for (const auto& c : {Counterexample::NonFaithful, Counterexample::NonDiscreteGeometric,
                        Counterexample::NonDiscreteGeometricCorrected})
    if (name == counterexample_name(c)) return counterexample_family(c, k, theta);
  throw std::invalid_argument("unknown built-in family '" + name + "'");
}

AnyFamily family_from_json(const json& j) {
  if (!j.is_object()) bad("family must be an object");
  if (j.contains("builtin")) {
    std::optional<double> theta;
    if (j.contains("theta")) theta = number(j.at("theta"));
    return builtin_family(j.at("builtin").get<std::string>(), need(j, "k").get<int>(), theta);
  }
  if (j.contains("lattice")) {
    Realization r = realize_lattice(lattice_from_json(j.at("lattice")));
    r.family.schedules = r.schedules;
    return r.family;
  }
  return parametric_family(j);
}

}  // namespace hyplim
