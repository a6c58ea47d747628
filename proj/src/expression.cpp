#include "hjlab/expression.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <vector>

namespace hjlab {

ExpressionSyntaxError::ExpressionSyntaxError(const std::string& message, std::size_t position)
    : std::invalid_argument(message + " at position " + std::to_string(position)), position_(position) {}

struct Expression::Node {
  enum class Kind { kNumber, kX, kY, kNeg, kAdd, kSub, kMul, kDiv, kPow, kSin, kCos, kExp } kind;
  double value = 0.0;
  std::shared_ptr<const Node> a, b;

  double eval(double x, double y) const {
    switch (kind) {
      case Kind::kNumber: return value;
      case Kind::kX: return x;
      case Kind::kY: return y;
      case Kind::kNeg: return -a->eval(x, y);
      case Kind::kAdd: return a->eval(x, y) + b->eval(x, y);
      case Kind::kSub: return a->eval(x, y) - b->eval(x, y);
      case Kind::kMul: return a->eval(x, y) * b->eval(x, y);
      case Kind::kDiv: return a->eval(x, y) / b->eval(x, y);
      case Kind::kPow: return std::pow(a->eval(x, y), b->eval(x, y));
      case Kind::kSin: return std::sin(a->eval(x, y));
      case Kind::kCos: return std::cos(a->eval(x, y));
      case Kind::kExp: return std::exp(a->eval(x, y));
    }
    return 0.0;
  }
};

namespace {

using Node = Expression::Node;
using NodePtr = std::shared_ptr<const Node>;
using Kind = Node::Kind;

NodePtr make(Kind kind, NodePtr a = nullptr, NodePtr b = nullptr, double value = 0.0) {
  auto node = std::make_shared<Node>();
  node->kind = kind;
  node->a = std::move(a);
  node->b = std::move(b);
  node->value = value;
  return node;
}

class Parser {
 public:
  explicit Parser(const std::string& text) : s_(text) {}

  NodePtr parse() {
    NodePtr root = expr();
    skip_space();
    if (pos_ < s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return root;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ExpressionSyntaxError(msg, pos_); }

  void skip_space() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr expr() {
    NodePtr lhs = term();
    for (;;) {
      if (accept('+')) lhs = make(Kind::kAdd, lhs, term());
      else if (accept('-')) lhs = make(Kind::kSub, lhs, term());
      else return lhs;
    }
  }

  NodePtr term() {
    NodePtr lhs = unary();
    for (;;) {
      if (accept('*')) lhs = make(Kind::kMul, lhs, unary());
      else if (accept('/')) lhs = make(Kind::kDiv, lhs, unary());
      else return lhs;
    }
  }

  NodePtr unary() {
    if (accept('-')) return make(Kind::kNeg, unary());
    if (accept('+')) return unary();
    return power();
  }

  NodePtr power() {
    NodePtr base = primary();
    if (accept('^')) return make(Kind::kPow, base, unary());
    return base;
  }

  NodePtr primary() {
    skip_space();
    if (pos_ >= s_.size()) fail("unexpected end of expression");
    const char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
    if (accept('(')) {
      NodePtr inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  NodePtr number() {
    double v = 0.0;
    const char* first = s_.data() + pos_;
    const auto [ptr, ec] = std::from_chars(first, s_.data() + s_.size(), v);
    if (ec != std::errc()) fail("malformed number");
    pos_ += static_cast<std::size_t>(ptr - first);
    return make(Kind::kNumber, nullptr, nullptr, v);
  }

  NodePtr identifier() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    const std::string name = s_.substr(start, pos_ - start);
    if (name == "x") return make(Kind::kX);
    if (name == "y") return make(Kind::kY);
    if (name == "pi") return make(Kind::kNumber, nullptr, nullptr, std::numbers::pi);
    Kind fn;
    if (name == "sin") fn = Kind::kSin;
    else if (name == "cos") fn = Kind::kCos;
    else if (name == "exp") fn = Kind::kExp;
    else {
      pos_ = start;
      fail("unknown identifier '" + name + "'");
    }
    if (!accept('(')) fail("expected '(' after " + name);
    NodePtr arg = expr();
    if (!accept(')')) fail("expected ')'");
    return make(fn, arg);
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace

Expression::Expression(std::string text, std::shared_ptr<const Node> root)
    : text_(std::move(text)), root_(std::move(root)) {}

Expression Expression::parse(const std::string& text) {
  Parser p(text);
  NodePtr root = p.parse();
  return Expression(text, std::move(root));
}

double Expression::operator()(double x, double y) const { return root_->eval(x, y); }

bool looks_periodic(const Expression& expr, double period) {
  // Irrational-ish offsets so that coincidences with node values are unlikely.
  static const double kSamples[] = {0.0, 0.1234567, 0.3141593, 0.5, 0.7071068, 0.9182736};
  for (double sx : kSamples)
    for (double sy : kSamples) {
      const double x = sx * period, y = sy * period;
      const double f = expr(x, y);
      for (const double g : {expr(x + period, y), expr(x, y + period)}) {
        if (!std::isfinite(f) || !std::isfinite(g)) return false;
        if (std::abs(f - g) > 1e-9 * (1.0 + std::abs(f))) return false;
      }
    }
  return true;
}

ParsedSource parse_source_expression(const std::string& text, int n, double period) {
  const Expression expr = Expression::parse(text);
  require_valid_resolution(n);
  if (!(period > 0.0)) throw std::invalid_argument("period must be positive");
  ParsedSource out{Field2D::sample(n, period, [&](double x, double y) { return expr(x, y); }),
                   looks_periodic(expr, period)};
  if (!out.field.all_finite()) throw std::invalid_argument("expression is not finite on the grid: " + text);
  return out;
}

}  // namespace hjlab
