#pragma once

#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "hyplim/families.hpp"
#include "hyplim/limits.hpp"

namespace hyplim {

using json = nlohmann::json;

// "re+imi" with '.' as decimal separator.
std::string format_complex(Complex z);
std::string format_number(double x);

json to_json(const GroupElement<double>& g);
json to_json(const GroupElement<Complex>& g);
template <typename Scalar>
GroupElement<Scalar> group_element_from_json(const json& j);
// Field taken from the "field" key (default real).
FieldTag field_of(const json& j);

json to_json(const BoundaryPoint<double>& p);
json to_json(const BoundaryPoint<Complex>& p);
template <typename Scalar>
BoundaryPoint<Scalar> boundary_point_from_json(const json& j);

json to_json(const GeomDataReal& d);
json to_json(const GeomDataComplex& d);
GeomDataReal geomdata_real_from_json(const json& j);
GeomDataComplex geomdata_complex_from_json(const json& j);

json to_json(const UnipotentLimit<double>& u);
json to_json(const UnipotentLimit<Complex>& u);

json to_json(const LatticeSpec& s);
// {"k","w","b","c"} with rational strings, or {"k","generators":[[...],...]}.
LatticeSpec lattice_from_json(const json& j);

struct LimitReport {
  std::string family;
  std::string schedule;
  std::string verdict;  // Converges | Diverges | NotCauchy
  json limit;           // null unless Converges
  std::vector<double> residuals;
  double extrapolation_error = 0.0;
  std::string reason;
};

json to_json(const LimitReport& r);
LimitReport limit_report_from_json(const json& j);

using AnyFamily = std::variant<RealFamily, ComplexFamily>;

// {"builtin": name, "k": K[, "theta": radians]}, {"lattice": {...}}, or a parametric
// family {"field", "k", "x", "y", "theta"[, "t", "n_min", "n_step", "rate_exponents"]}
// whose entries are expressions in n (angles in radians).
AnyFamily family_from_json(const json& j);
AnyFamily builtin_family(const std::string& name, int k, std::optional<double> theta = std::nullopt);
std::vector<std::string> builtin_family_names();

}  // namespace hyplim
