#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hyplim/json_io.hpp"

namespace hyplim {

struct CheckResult {
  int criterion = 0;
  std::string group;
  std::string name;
  bool passed = false;
  double value = 0.0;
  double threshold = 0.0;
  bool at_least = false;  // value >= threshold instead of value <= threshold
  std::string detail;
  double seconds = 0.0;
};

struct AcceptanceOptions {
  // Replaces the threshold of every error-type (value <= threshold) check.
  std::optional<double> tol;
  // Group names, criterion numbers or check-name prefixes; empty runs everything.
  std::vector<std::string> only;
};

struct AcceptanceReport {
  std::vector<CheckResult> checks;

  bool passed() const;
  bool criterion_passed(int c) const;
  bool criterion_ran(int c) const;
  json to_json() const;
};

std::vector<std::string> acceptance_groups();
std::string criterion_title(int c);
std::string criterion_group(int c);

// Throws std::invalid_argument on an --only entry that selects nothing.
AcceptanceReport run_acceptance(const AcceptanceOptions& options = {});

// Expected limit vectors of the built-in families, frozen from the closed forms.
Eigen::VectorXd table2_expected(int k, int r);
// r in 0..k-1 or k+1; s is the (0, k+1) entry.
std::pair<Eigen::VectorXcd, Complex> table4_expected(int k, int r);

}  // namespace hyplim
