#pragma once

// Source expressions over x, y: numbers, pi, sin/cos/exp, + - * / ^ and
// parentheses. `^` binds tighter than unary minus and is right associative,
// so -2^2 = -4 and 2^3^2 = 512.

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>

#include "hjlab/field.hpp"

namespace hjlab {

class ExpressionSyntaxError : public std::invalid_argument {
 public:
  ExpressionSyntaxError(const std::string& message, std::size_t position);
  /// Zero-based character offset of the offending token.
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

class Expression {
 public:
  static Expression parse(const std::string& text);

  double operator()(double x, double y) const;
  const std::string& text() const { return text_; }

  struct Node;

 private:
  Expression(std::string text, std::shared_ptr<const Node> root);
  std::string text_;
  std::shared_ptr<const Node> root_;
};

/// True when the expression takes matching values (to 1e-9 relative) on
/// opposite edges of the periodic cell, checked on a sample of edge points.
bool looks_periodic(const Expression& expr, double period);

struct ParsedSource {
  Field2D field;
  bool periodic = true;  // false: spectral derivatives of the field are unreliable
};

ParsedSource parse_source_expression(const std::string& text, int n, double period = 1.0);

}  // namespace hjlab
