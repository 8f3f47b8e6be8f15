#include "hyplim/expression.hpp"

#include <cctype>
#include <cmath>
#include <vector>

namespace hyplim {

struct Expression::Node {
  enum Kind { Number, Variable, Pi, Neg, Add, Sub, Mul, Div, Pow, Round, Sqrt } kind;
  long long value = 0;
  std::string name;
  std::shared_ptr<const Node> a, b;
};

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;
using N = Expression::Node;

NodePtr make(N::Kind k, NodePtr a = nullptr, NodePtr b = nullptr) {
  auto n = std::make_shared<N>();
  n->kind = k;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  NodePtr parse() {
    auto e = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw ParseError("cannot parse '" + s_ + "' at position " + std::to_string(pos_) + ": " + why);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  NodePtr expr() {
    auto l = term();
    for (;;) {
      if (eat('+')) l = make(N::Add, l, term());
      else if (eat('-')) l = make(N::Sub, l, term());
      else return l;
    }
  }
  NodePtr term() {
    auto l = unary();
    for (;;) {
      if (eat('*')) l = make(N::Mul, l, unary());
      else if (eat('/')) l = make(N::Div, l, unary());
      else return l;
    }
  }
  NodePtr unary() {
    if (eat('-')) return make(N::Neg, unary());
    if (eat('+')) return unary();
    return power();
  }
  NodePtr power() {
    auto base = primary();
    if (eat('^')) return make(N::Pow, base, unary());
    return base;
  }
  NodePtr primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (eat('(')) {
      auto e = expr();
      if (!eat(')')) fail("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      long long v = 0;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        if (__builtin_mul_overflow(v, 10LL, &v) || __builtin_add_overflow(v, s_[pos_] - '0', &v)) fail("integer too large");
        ++pos_;
      }
      if (pos_ < s_.size() && (s_[pos_] == '.' || s_[pos_] == 'e')) fail("only integer literals are allowed");
      auto n = std::make_shared<N>();
      n->kind = N::Number;
      n->value = v;
      return n;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::string id;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) id += s_[pos_++];
      if (id == "pi") return make(N::Pi);
      if (id == "round" || id == "sqrt") {
        if (!eat('(')) fail("expected '(' after " + id);
        auto e = expr();
        if (!eat(')')) fail("expected ')'");
        return make(id == "round" ? N::Round : N::Sqrt, e);
      }
      auto n = std::make_shared<N>();
      n->kind = N::Variable;
      n->name = id;
      return n;
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

double eval(const N& n, const std::map<std::string, double>& vars) {
  switch (n.kind) {
    case N::Number: return static_cast<double>(n.value);
    case N::Variable: {
      const auto it = vars.find(n.name);
      if (it == vars.end()) throw std::invalid_argument("unknown variable '" + n.name + "'");
      return it->second;
    }
    case N::Pi: return kPi;
    case N::Neg: return -eval(*n.a, vars);
    case N::Add: return eval(*n.a, vars) + eval(*n.b, vars);
    case N::Sub: return eval(*n.a, vars) - eval(*n.b, vars);
    case N::Mul: return eval(*n.a, vars) * eval(*n.b, vars);
    case N::Div: return eval(*n.a, vars) / eval(*n.b, vars);
    case N::Pow: return std::pow(eval(*n.a, vars), eval(*n.b, vars));
    case N::Round: return std::round(eval(*n.a, vars));
    case N::Sqrt: return std::sqrt(eval(*n.a, vars));
  }
  return 0.0;
}

struct Q {
  Exponent num, den;
};

Exponent gcd_i(Exponent a, Exponent b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b) {
    const Exponent t = a % b;
    a = b;
    b = t;
  }
  return a == 0 ? 1 : a;
}

Q norm(Exponent num, Exponent den) {
  if (den == 0) throw std::domain_error("division by zero in schedule");
  if (den < 0) num = -num, den = -den;
  const Exponent g = gcd_i(num, den);
  return {num / g, den / g};
}

Exponent add_c(Exponent a, Exponent b) {
  Exponent r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("schedule value overflow");
  return r;
}

Q evalq(const N& n, const std::map<std::string, Exponent>& vars) {
  switch (n.kind) {
    case N::Number: return {n.value, 1};
    case N::Variable: {
      const auto it = vars.find(n.name);
      if (it == vars.end()) throw std::invalid_argument("unknown variable '" + n.name + "'");
      return {it->second, 1};
    }
    case N::Pi:
    case N::Sqrt: throw std::invalid_argument("schedules must be rational expressions");
    case N::Neg: {
      const Q a = evalq(*n.a, vars);
      return {-a.num, a.den};
    }
    case N::Add:
    case N::Sub: {
      const Q a = evalq(*n.a, vars), b = evalq(*n.b, vars);
      const Exponent bn = n.kind == N::Add ? b.num : -b.num;
      return norm(add_c(checked_mul(a.num, b.den), checked_mul(bn, a.den)), checked_mul(a.den, b.den));
    }
    case N::Mul: {
      const Q a = evalq(*n.a, vars), b = evalq(*n.b, vars);
      return norm(checked_mul(a.num, b.num), checked_mul(a.den, b.den));
    }
    case N::Div: {
      const Q a = evalq(*n.a, vars), b = evalq(*n.b, vars);
      return norm(checked_mul(a.num, b.den), checked_mul(a.den, b.num));
    }
    case N::Pow: {
      const Q a = evalq(*n.a, vars), e = evalq(*n.b, vars);
      if (e.den != 1 || e.num < 0 || e.num > 1000) throw std::invalid_argument("exponents must be nonnegative integers");
      return norm(checked_pow(a.num, static_cast<int>(e.num)), checked_pow(a.den, static_cast<int>(e.num)));
    }
    case N::Round: {
      const Q a = evalq(*n.a, vars);
      // floor((2 num + den) / (2 den))
      const Exponent t = add_c(checked_mul(2, a.num), a.den), d = checked_mul(2, a.den);
      Exponent q = t / d;
      if (t % d != 0 && t < 0) q -= 1;
      return {q, 1};
    }
  }
  return {0, 1};
}

}  // namespace

Expression Expression::parse(const std::string& text) {
  Expression e;
  e.text_ = text;
  e.root_ = Parser(text).parse();
  return e;
}

double Expression::evaluate(const std::map<std::string, double>& vars) const { return eval(*root_, vars); }

Exponent Expression::evaluate_integer(const std::map<std::string, Exponent>& vars) const {
  const Q q = evalq(*root_, vars);
  if (q.den != 1) throw std::invalid_argument("schedule '" + text_ + "' is not an integer");
  return q.num;
}

Schedule schedule_from_expression(const std::string& text, int k) {
  const Expression e = Expression::parse(text);
  Schedule s;
  s.description = text;
  s.exponent_at = [e, k](long long n) {
    const Exponent m = e.evaluate_integer({{"n", n}, {"k", k}, {"l", k / 2}});
    if (m < 1) throw std::invalid_argument("schedule '" + e.text() + "' is not positive at n=" + std::to_string(n));
    return m;
  };
  return s;
}

}  // namespace hyplim
