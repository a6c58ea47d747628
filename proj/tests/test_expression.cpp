#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "hjlab/expression.hpp"

namespace hjlab {
namespace {

constexpr double kPi = std::numbers::pi;

double at(const std::string& text, double x = 0.0, double y = 0.0) { return Expression::parse(text)(x, y); }

TEST(Expression, ZeroSource) {
  const ParsedSource s = parse_source_expression("0", 32);
  EXPECT_TRUE(s.periodic);
  EXPECT_EQ(linf_norm(s.field), 0.0);
}

TEST(Expression, ProductOfCosinesMatchesDirectSampling) {
  const int n = 64;
  const ParsedSource s = parse_source_expression("cos(2*pi*x)*cos(2*pi*y)", n);
  const Field2D direct = Field2D::sample(n, 1.0, [](double x, double y) {
    return std::cos(2 * kPi * x) * std::cos(2 * kPi * y);
  });
  EXPECT_TRUE(s.periodic);
  EXPECT_EQ(linf_norm(s.field - direct), 0.0);
}

TEST(Expression, PowerIdentity) {
  const ParsedSource a = parse_source_expression("sin(2*pi*x)^2", 64);
  const ParsedSource b = parse_source_expression("(1 - cos(4*pi*x))/2", 64);
  EXPECT_LE(linf_norm(a.field - b.field), 1e-14);
}

TEST(Expression, PrecedenceAndAssociativity) {
  EXPECT_EQ(at("-2^2"), -4.0);
  EXPECT_EQ(at("2^3^2"), 512.0);
  EXPECT_EQ(at("(-2)^2"), 4.0);
  EXPECT_EQ(at("1 + 2 * 3"), 7.0);
  EXPECT_EQ(at("(1 + 2) * 3"), 9.0);
  EXPECT_EQ(at("8 / 4 / 2"), 1.0);
  EXPECT_EQ(at("2 - 3 - 4"), -5.0);
  EXPECT_EQ(at("--3"), 3.0);
  EXPECT_DOUBLE_EQ(at("1.5e2 + .5"), 150.5);
  EXPECT_DOUBLE_EQ(at("exp(1)"), std::exp(1.0));
  EXPECT_DOUBLE_EQ(at("x*y + pi", 2.0, 3.0), 6.0 + kPi);
  EXPECT_EQ(Expression::parse("  x + y ").text(), "  x + y ");
}

TEST(Expression, SyntaxErrorsReportPositions) {
  const auto position = [](const std::string& text) -> std::size_t {
    try {
      Expression::parse(text);
    } catch (const ExpressionSyntaxError& e) {
      return e.position();
    }
    ADD_FAILURE() << "no error for '" << text << "'";
    return 0;
  };
  EXPECT_EQ(position("cos(2*pi*x"), 10u);
  EXPECT_EQ(position("1 +"), 3u);
  EXPECT_EQ(position("1 + * 2"), 4u);
  EXPECT_EQ(position("foo(x)"), 0u);
  EXPECT_EQ(position("x + z"), 4u);
  EXPECT_EQ(position("1 2"), 2u);
  EXPECT_EQ(position(""), 0u);
  EXPECT_EQ(position("sin x"), 4u);
  EXPECT_THROW(parse_source_expression("cos(", 32), std::invalid_argument);
}

TEST(Expression, PeriodicityCheck) {
  EXPECT_FALSE(parse_source_expression("x", 32).periodic);
  EXPECT_FALSE(parse_source_expression("cos(pi*x)", 32).periodic);
  EXPECT_TRUE(parse_source_expression("cos(pi*x)", 32, 2.0).periodic);
  EXPECT_TRUE(parse_source_expression("exp(sin(2*pi*y)) + 3", 32).periodic);
  EXPECT_FALSE(looks_periodic(Expression::parse("y^2"), 1.0));
}

TEST(Expression, NonFiniteValuesRejected) {
  EXPECT_THROW(parse_source_expression("1", 4), std::invalid_argument);
  try {
    parse_source_expression("1/(x*y)", 8);
    FAIL();
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("not finite"), std::string::npos);
  }
}

}  // namespace
}  // namespace hjlab
