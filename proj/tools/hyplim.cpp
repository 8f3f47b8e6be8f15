#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "hyplim/acceptance.hpp"
#include "hyplim/expression.hpp"
#include "hyplim/isometry.hpp"
#include "hyplim/lattice.hpp"
#include "hyplim/schottky.hpp"

using namespace hyplim;

namespace {

struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Config {
  std::string field = "real";
  int k = 2;
  long long n = 10;
  long long n_min = 256;
  long long n_max = 65536;
  double tol = 1e-3;
  bool tol_set = false;
  std::string format = "json";
  std::string out;
};

class Csv {
 public:
  explicit Csv(std::vector<std::string> header) : header_(std::move(header)) {}
  void row(std::vector<std::string> r) { rows_.push_back(std::move(r)); }
  std::string str() const {
    std::ostringstream o;
    line(o, header_);
    for (const auto& r : rows_) line(o, r);
    return o.str();
  }

 private:
  static void line(std::ostream& o, const std::vector<std::string>& r) {
    for (std::size_t i = 0; i < r.size(); ++i) o << (i ? "," : "") << r[i];
    o << "\n";
  }
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

void emit(const Config& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(c.out);
  if (!f) throw ConfigError("cannot open output file " + c.out);
  f << text;
}

void emit(const Config& c, const json& j, const Csv& csv) { emit(c, c.format == "csv" ? csv.str() : j.dump(2) + "\n"); }

json read_json(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot read " + path);
  try {
    return json::parse(f);
  } catch (const json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

void check_k(FieldTag f, int k) {
  const int lo = f == FieldTag::Real ? 2 : 1, hi = f == FieldTag::Real ? 16 : 8;
  if (k < lo || k > hi)
    throw ConfigError("k must lie in " + std::to_string(lo) + ".." + std::to_string(hi) + " for the " + field_name(f) + " field");
}

// Powers of two between n_min and n_max, moved up to the admissible progression.
std::vector<long long> probes(const Config& c, long long step) {
  if (c.n_min < 1 || c.n_max <= c.n_min) throw ConfigError("need 1 <= n-min < n-max");
  std::vector<long long> r;
  for (long long n = 1; n <= c.n_max; n *= 2) {
    if (n < c.n_min) continue;
    const long long a = ((n + step - 1) / step) * step;
    if (r.empty() || a > r.back()) r.push_back(a);
  }
  if (r.size() < 4) throw ConfigError("the probe range must contain at least 4 powers of two");
  return r;
}

std::string num(double x) { return format_number(x); }
std::string num(Complex z) { return format_complex(z); }

template <typename Scalar>
void push_vec(std::vector<std::string>& row, const Vec<Scalar>& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) row.push_back(num(v(i)));
}

// ------------------------------------------------------------------ table

int cmd_table(const Config& c, int which) {
  const FieldTag field = (which == 1 || which == 2) ? FieldTag::Real : FieldTag::Complex;
  check_k(field, c.k);
  const int k = c.k, l = k / 2;
  json rows = json::array();
  std::vector<std::string> header = {"row", "schedule"};
  if (which == 1 || which == 3) {
    if (c.n < 2) throw ConfigError("n must be at least 2");
    if (which == 1) {
      for (int i = 1; i <= k; ++i) header.push_back("x" + std::to_string(i));
      header.push_back("y");
      for (int j = 1; j <= l; ++j) header.push_back("theta" + std::to_string(j));
    } else {
      for (int i = 1; i <= k; ++i) header.push_back("x" + std::to_string(i));
      header.insert(header.end(), {"t", "y"});
      for (int j = 1; j <= k; ++j) header.push_back("theta" + std::to_string(j));
      header.push_back("phi");
    }
    Csv csv(header);
    auto add = [&](int r, const Schedule& s, const auto& d) {
      std::vector<std::string> row = {std::to_string(r), s.description};
      push_vec(row, d.x);
      if constexpr (std::is_same_v<std::decay_t<decltype(d)>, GeomDataComplex>) row.push_back(num(d.t));
      row.push_back(num(d.y));
      for (const Angle& a : d.theta) row.push_back(num(a.radians()));
      if constexpr (std::is_same_v<std::decay_t<decltype(d)>, GeomDataComplex>) row.push_back(num(d.phase.radians()));
      csv.row(row);
      rows.push_back({{"row", r}, {"schedule", s.description}, {"data", to_json(d)}});
    };
    if (which == 1) {
      const RealFamily f = jorgensen_real_family(k);
      for (int r = 0; r <= l; ++r) add(r, Schedule::power(r), f.data_power(c.n, Schedule::power(r).exponent_at(c.n)));
    } else {
      const ComplexFamily f = jorgensen_complex_family(k);
      std::vector<int> rs;
      for (int r = 0; r < k; ++r) rs.push_back(r);
      rs.push_back(k + 1);
      for (int r : rs) add(r, Schedule::power(r), f.data_power(c.n, Schedule::power(r).exponent_at(c.n)));
    }
    emit(c, json{{"table", which}, {"field", field_name(field)}, {"k", k}, {"n", c.n}, {"rows", rows}}, csv);
    return 0;
  }
  header.push_back("verdict");
  for (int i = 1; i <= k; ++i) header.push_back("v" + std::to_string(i));
  if (which == 4) header.push_back("s");
  header.insert(header.end(), {"residual", "extrapolation_error"});
  Csv csv(header);
  auto add = [&](int r, const Schedule& s, const auto& nl) {
    using M = std::decay_t<decltype(nl.extrapolated)>;
    using Scalar = typename M::Scalar;
    const std::string verdict = nl.converged ? "Converges" : "NotCauchy";
    const double res = nl.residuals.empty() ? 0.0 : nl.residuals.back();
    std::vector<std::string> row = {std::to_string(r), s.description, verdict};
    json jr = {{"row", r}, {"schedule", s.description}, {"verdict", verdict}, {"residuals", nl.residuals},
               {"extrapolation_error", nl.extrapolation_error}};
    if (nl.converged) {
      const auto u = UnipotentLimit<Scalar>::from_matrix(nl.extrapolated);
      push_vec(row, u.v);
      if constexpr (is_complex_v<Scalar>) row.push_back(num(u.s));
      jr["limit"] = to_json(u);
    } else {
      for (int i = 0; i < k + (which == 4 ? 1 : 0); ++i) row.push_back("");
      jr["limit"] = nullptr;
    }
    row.push_back(num(res));
    row.push_back(num(nl.extrapolation_error));
    csv.row(row);
    rows.push_back(jr);
  };
  if (which == 2) {
    const RealFamily f = jorgensen_real_family(k);
    const auto p = probes(c, f.n_step);
    for (int r = 0; r <= l; ++r) add(r, Schedule::power(r), numeric_limit(f, Schedule::power(r), p, c.tol));
  } else {
    const ComplexFamily f = jorgensen_complex_family(k);
    const auto p = probes(c, f.n_step);
    for (int r = 0; r < k; ++r) add(r, Schedule::power(r), numeric_limit(f, Schedule::power(r), p, c.tol));
    add(k + 1, Schedule::power(k + 1), numeric_limit(f, Schedule::power(k + 1), p, c.tol));
    add(k + 1, Schedule::power(k + 1, 2), numeric_limit(f, Schedule::power(k + 1, 2), p, c.tol));
  }
  emit(c, json{{"table", which}, {"field", field_name(field)}, {"k", k}, {"rows", rows}}, csv);
  return 0;
}

// ------------------------------------------------------------------ verify

int cmd_verify(const Config& c, const std::vector<std::string>& only) {
  AcceptanceOptions o;
  if (c.tol_set) o.tol = c.tol;
  for (const auto& s : only) {
    std::stringstream ss(s);
    std::string part;
    while (std::getline(ss, part, ','))
      if (!part.empty()) o.only.push_back(part);
  }
  AcceptanceReport r;
  try {
    r = run_acceptance(o);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  Csv csv({"criterion", "group", "name", "passed", "value", "comparison", "threshold", "seconds", "detail"});
  for (const auto& ch : r.checks) {
    std::string detail = ch.detail;
    for (char& x : detail)
      if (x == ',' || x == '"') x = ';';
    csv.row({std::to_string(ch.criterion), ch.group, ch.name, ch.passed ? "true" : "false", num(ch.value), ch.at_least ? ">=" : "<=",
             num(ch.threshold), num(ch.seconds), detail});
  }
  emit(c, r.to_json(), csv);
  for (const auto& ch : r.checks)
    if (!ch.passed) std::cerr << "FAIL " << ch.name << ": " << ch.detail << "\n";
  std::cerr << r.checks.size() << " checks, " << (r.passed() ? "all passed" : "failures present") << "\n";
  return r.passed() ? 0 : 1;
}

// ------------------------------------------------------------------ limit

template <typename Data>
LimitReport limit_report(const FamilySpec<Data>& f, const Schedule& s, const std::vector<long long>& p, double tol) {
  using Scalar = ScalarOf<Data>;
  LimitReport r;
  r.family = f.description;
  r.schedule = s.description;
  const auto nl = numeric_limit(f, s, p, tol);
  r.residuals = nl.residuals;
  r.extrapolation_error = nl.extrapolation_error;
  std::optional<ConvergenceReport<Scalar>> pred;
  try {
    if constexpr (is_complex_v<Scalar>) pred = check_convergence_complex(power_family(f, s), p);
    else pred = check_convergence_real(power_family(f, s), p);
  } catch (const HyplimError&) {
    // predicate hypotheses do not hold; the numeric verdict stands alone
  }
  if (pred && !pred->converges) {
    r.verdict = "Diverges";
    r.reason = pred->reason + " (condition " + std::to_string(pred->offending_index) + ")";
  } else if (!nl.converged) {
    r.verdict = "NotCauchy";
    r.reason = "numeric sequence is not Cauchy (worst ratio " + format_number(nl.worst_ratio) + ")";
  } else {
    r.verdict = "Converges";
    const auto u = UnipotentLimit<Scalar>::from_matrix(nl.extrapolated);
    const double dev = (u.element().matrix() - nl.extrapolated).cwiseAbs().maxCoeff();
    r.limit = to_json(u);
    r.limit["unipotent"] = dev <= 1e-4;
    r.limit["matrix"] = to_json(GroupElement<Scalar>(nl.extrapolated, 1e-6));
  }
  return r;
}

int cmd_limit(const Config& c, const std::string& family, const std::string& schedule) {
  AnyFamily f = [&]() -> AnyFamily {
    const auto names = builtin_family_names();
    if (std::find(names.begin(), names.end(), family) != names.end()) {
      try {
        return builtin_family(family, c.k);
      } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
      }
    }
    const json j = read_json(family);
    try {
      return family_from_json(j);
    } catch (const HyplimError&) {
      throw;
    } catch (const std::exception& e) {
      throw ConfigError(family + ": " + e.what());
    }
  }();
  return std::visit(
      [&](const auto& fam) {
        Schedule s;
        try {
          s = schedule_from_expression(schedule, fam.k);
          const auto p = probes(c, fam.n_step);
          for (long long n : p) s.exponent_at(std::max(n, fam.n_min));
        } catch (const ConfigError&) {
          throw;
        } catch (const std::exception& e) {
          throw ConfigError(e.what());
        }
        std::vector<long long> p = probes(c, fam.n_step);
        for (auto& n : p) n = std::max(n, fam.n_min);
        const LimitReport r = limit_report(fam, s, p, c.tol);
        Csv csv({"family", "schedule", "verdict", "limit_v", "residual", "extrapolation_error"});
        std::string v;
        if (!r.limit.is_null())
          for (const auto& e : r.limit.at("v")) v += (v.empty() ? "" : " ") + (e.is_array() ? format_complex({e[0], e[1]}) : num(e.get<double>()));
        csv.row({r.family, r.schedule, r.verdict, v, num(r.residuals.empty() ? 0.0 : r.residuals.back()), num(r.extrapolation_error)});
        emit(c, to_json(r), csv);
        return 0;
      },
      f);
}

// ------------------------------------------------------------------ realize

int cmd_realize(const Config& c, const std::string& path) {
  LatticeSpec spec;
  try {
    spec = lattice_from_json(read_json(path));
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  const Realization rz = realize_lattice(spec);
  const long long n = std::max(rz.family.n_min, ((c.n + rz.family.n_step - 1) / rz.family.n_step) * rz.family.n_step);
  json schedules = json::array();
  for (const auto& s : rz.schedules) schedules.push_back(s.description);
  const auto p = probes(c, rz.family.n_step);
  const auto g = harvest_limit_group(rz.family, rz.schedules, p);
  const Eigen::MatrixXd G = spec.generators(), H = g.coordinate_matrix();
  const double residual = std::max(lattice_containment_residual(G, H), lattice_containment_residual(H, G));
  json harvested = json::array();
  for (const auto& u : g.generators) harvested.push_back(json(std::vector<double>(u.v.data(), u.v.data() + u.v.size())));
  const GeomDataReal d = rz.family.data_at(n);
  json j = {{"lattice", to_json(spec)},
            {"family", {{"description", rz.family.description}, {"k", spec.k}, {"n_min", rz.family.n_min}, {"n_step", rz.family.n_step},
                        {"rate_exponents", rz.family.rate_exponents}, {"sample_n", n}, {"sample_data", to_json(d)}}},
            {"schedules", schedules},
            {"harvested", harvested},
            {"detected_rank", g.detected_rank},
            {"lattice_residual", residual}};
  Csv csv({"schedule", "exponent_at_sample_n", "harvested_v"});
  for (std::size_t i = 0; i < rz.schedules.size(); ++i) {
    std::string v;
    if (i < g.generators.size())
      for (Eigen::Index q = 0; q < g.generators[i].v.size(); ++q) v += (q ? " " : "") + num(g.generators[i].v(q));
    csv.row({rz.schedules[i].description, to_string(rz.schedules[i].exponent_at(n)), v});
  }
  emit(c, j, csv);
  return 0;
}

// ------------------------------------------------------------------ schottky

template <typename Data>
json certificate_json(const FreeGroupFamily<Data>& fam, long long n, Exponent cap, std::size_t samples) {
  const auto pc = fam.certify(n, cap, samples);
  return {{"verdict", pc.verdict},
          {"region", {{"verdict", pc.region.verdict}, {"margin", pc.region.margin}, {"cap", to_string(pc.region.cap)},
                      {"samples", pc.region.samples}, {"worst_exponent", to_string(pc.region.worst_exponent)},
                      {"center", to_json(fam.ball.center)}, {"radius", fam.ball.radius},
                      {"shape", fam.ball.shape == RegionShape::Ball ? "ball" : "ball-interval"}}},
          {"partner", {{"strength", fam.partner.strength}, {"margin", pc.partner_margin}, {"doublings", fam.partner.doublings},
                       {"plus", to_json(fam.plus.center)}, {"minus", to_json(fam.minus.center)}, {"radius", fam.plus.radius},
                       {"h", to_json(fam.partner.h)}}},
          {"containment_margin", pc.containment_margin},
          {"commutator_distance", pc.commutator_distance}};
}

int cmd_schottky(const Config& c, long long cap_in, std::size_t samples) {
  const FieldTag field = parse_field(c.field);
  check_k(field, c.k);
  if (c.n < 2) throw ConfigError("n must be at least 2");
  if (cap_in < 0) throw ConfigError("cap must be positive");
  const Exponent cap = cap_in > 0 ? Exponent(cap_in) : default_exponent_cap(field, c.k, c.n);
  json j = field == FieldTag::Real ? certificate_json(free_group_family_real(c.k), c.n, cap, samples)
                                   : certificate_json(free_group_family_complex(c.k), c.n, cap, samples);
  j["field"] = field_name(field);
  j["k"] = c.k;
  j["n"] = c.n;
  Csv csv({"field", "k", "n", "cap", "verdict", "region_margin", "partner_margin", "containment_margin", "commutator_distance"});
  csv.row({field_name(field), std::to_string(c.k), std::to_string(c.n), to_string(cap), j["verdict"].get<bool>() ? "true" : "false",
           num(j["region"]["margin"].get<double>()), num(j["partner"]["margin"].get<double>()), num(j["containment_margin"].get<double>()),
           num(j["commutator_distance"].get<double>())});
  emit(c, j, csv);
  return 0;
}

// ------------------------------------------------------------------ classify

template <typename Scalar>
json classify_json(const GroupElement<Scalar>& g) {
  if (!is_in_group(g)) throw HyplimError("matrix does not preserve the form");
  const IsometryClass cls = classify(g);
  json j = {{"field", FieldTraits<Scalar>::name}, {"k", g.k()}, {"class", cls.name()}, {"translation_length", translation_length(g)}};
  if (cls.kind == IsometryClass::Kind::Loxodromic) {
    const auto fp = fixed_points(g);
    j["attracting"] = to_json(fp.attracting);
    j["repelling"] = to_json(fp.repelling);
    const auto wp = well_position(g);
    j["data"] = to_json(wp.data);
    j["conjugator"] = to_json(wp.conjugator);
  }
  return j;
}

int cmd_classify(const Config& c, const std::string& path) {
  const json in = read_json(path);
  json j;
  try {
    j = field_of(in) == FieldTag::Real ? classify_json(group_element_from_json<double>(in))
                                       : classify_json(group_element_from_json<Complex>(in));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  Csv csv({"field", "k", "class", "translation_length"});
  csv.row({j["field"], std::to_string(j["k"].get<int>()), j["class"], num(j["translation_length"].get<double>())});
  emit(c, j, csv);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hyplim: limits of cyclic groups of rank-one hyperbolic isometries"};
  app.require_subcommand(1);
  Config c;
  auto common = [&](CLI::App* s) {
    s->add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    s->add_option("--out", c.out, "output file (default stdout)");
  };
  auto probes_opts = [&](CLI::App* s) {
    s->add_option("--n-min", c.n_min, "smallest probe n");
    s->add_option("--n-max", c.n_max, "largest probe n");
    s->add_option("--tol", c.tol, "Cauchy tolerance")->each([&](const std::string&) { c.tol_set = true; });
  };

  int which = 2;
  auto* table = app.add_subcommand("table", "emit one of the data/limit tables of the built-in families");
  table->add_option("--which", which, "1: real data, 2: real limits, 3: complex data, 4: complex limits")->required()->check(CLI::Range(1, 4));
  table->add_option("--k", c.k, "dimension parameter");
  table->add_option("--n", c.n, "n for the data tables");
  common(table);
  probes_opts(table);

  std::vector<std::string> only;
  auto* verify = app.add_subcommand("verify", "run the acceptance checks");
  verify->add_option("--only", only, "groups, criterion numbers or check-name prefixes");
  verify->add_option("--tol", c.tol, "replace every error threshold")->each([&](const std::string&) { c.tol_set = true; });
  common(verify);

  std::string family, schedule;
  auto* limit = app.add_subcommand("limit", "limit of a family along a schedule");
  limit->add_option("--family", family, "family JSON file or built-in name")->required();
  limit->add_option("--schedule", schedule, "schedule expression in n, e.g. n^2 or round(n^2/2)")->required();
  limit->add_option("--k", c.k, "k for built-in families");
  common(limit);
  probes_opts(limit);

  std::string lattice;
  auto* realize = app.add_subcommand("realize", "build a family whose geometric limit is the given lattice");
  realize->add_option("--lattice", lattice, "lattice JSON file")->required();
  realize->add_option("--n", c.n, "n for the sample data");
  common(realize);
  probes_opts(realize);

  long long cap = 0;
  std::size_t samples = 1000;
  auto* schottky = app.add_subcommand("schottky", "fundamental-region and ping-pong certificates");
  schottky->add_option("--field", c.field, "real or complex family")->check(CLI::IsMember({"real", "complex"}));
  schottky->add_option("--k", c.k, "dimension parameter");
  schottky->add_option("--n", c.n, "member of the family to certify");
  schottky->add_option("--cap", cap, "largest |N| checked (default min(n^{l+1}, 1e5), complex n^{k+1})");
  schottky->add_option("--samples", samples, "sample points per region")->check(CLI::Range(std::size_t{16}, std::size_t{1000000}));
  common(schottky);

  std::string matrix;
  auto* cls = app.add_subcommand("classify", "classify a matrix and read off its geometric data");
  cls->add_option("matrix", matrix, "GroupElement JSON file")->required();
  common(cls);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  try {
    if (*table) return cmd_table(c, which);
    if (*verify) return cmd_verify(c, only);
    if (*limit) return cmd_limit(c, family, schedule);
    if (*realize) return cmd_realize(c, lattice);
    if (*schottky) return cmd_schottky(c, cap, samples);
    if (*cls) return cmd_classify(c, matrix);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
