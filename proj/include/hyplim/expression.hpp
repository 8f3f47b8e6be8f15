#pragma once

#include <map>
#include <memory>
#include <stdexcept>
#include <string>

#include "hyplim/limits.hpp"

namespace hyplim {

struct ParseError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Arithmetic in n with integers, named variables, + - * / ^, parentheses,
// round(.), sqrt(.) and pi.
class Expression {
 public:
  static Expression parse(const std::string& text);

  double evaluate(const std::map<std::string, double>& vars) const;
  // Exact rational evaluation; the result must be an integer. sqrt and pi are rejected.
  Exponent evaluate_integer(const std::map<std::string, Exponent>& vars) const;
  const std::string& text() const { return text_; }

  struct Node;

 private:
  std::shared_ptr<const Node> root_;
  std::string text_;
};

// Schedule from an expression in n; k and l = floor(k/2) are available as variables.
Schedule schedule_from_expression(const std::string& text, int k);

}  // namespace hyplim
