#include <doctest.h>

#include <cmath>
#include <vector>

#include "phibvp/errors.hpp"
#include "phibvp/expression.hpp"

using namespace phibvp;

namespace {

double ev(const std::string& text, double t = 0.0, std::vector<double> x = {0.0},
          std::vector<double> y = {0.0}, int component = 0) {
  return Expression::parse(text).eval(t, x, y, component);
}

}  // namespace

TEST_CASE("arithmetic and precedence") {
  CHECK(ev("1 + 2*3") == 7.0);
  CHECK(ev("(1 + 2)*3") == 9.0);
  CHECK(ev("2 - 3 - 4") == -5.0);
  CHECK(ev("12/3/2") == 2.0);
  CHECK(ev("-2*3") == -6.0);
  CHECK(ev("2*-3") == -6.0);
  CHECK(ev("1.5e2 + 0.5") == 150.5);
  CHECK(ev("pi") == doctest::Approx(3.14159265358979));
}

TEST_CASE("variables and functions") {
  CHECK(ev("t*t", 3.0) == 9.0);
  CHECK(ev("x + 2*y", 0.0, {1.5}, {2.0}) == 5.5);
  CHECK(ev("sin(t) + cos(t)", 0.0) == 1.0);
  CHECK(ev("exp(1)") == doctest::Approx(std::exp(1.0)));
  CHECK(ev("tanh(0.5)") == doctest::Approx(std::tanh(0.5)));
  CHECK(ev("sin(cos(exp(t)))", 0.2) == doctest::Approx(std::sin(std::cos(std::exp(0.2)))));
}

TEST_CASE("component indexing and the bare-component shorthand") {
  const std::vector<double> x = {1.0, 10.0, 100.0};
  const std::vector<double> y = {2.0, 20.0, 200.0};
  CHECK(ev("x[0] + y[2]", 0.0, x, y) == 201.0);
  CHECK(ev("x[1]*y[1]", 0.0, x, y) == 200.0);
  // bare x tracks the component being evaluated
  CHECK(ev("x + y", 0.0, x, y, 1) == 30.0);
  CHECK(ev("x + y", 0.0, x, y, 2) == 300.0);
}

TEST_CASE("usage flags") {
  const Expression e = Expression::parse("t + x[1]*y");
  CHECK(e.uses_state());
  CHECK(e.uses_derivative());
  CHECK(e.max_state_index() == 1);
  CHECK(e.uses_bare_derivative());
  CHECK_FALSE(e.uses_bare_state());

  const Expression plain = Expression::parse("t*t - 1");
  CHECK_FALSE(plain.uses_state());
  CHECK_FALSE(plain.uses_derivative());
}

TEST_CASE("parse failures carry positions") {
  CHECK_THROWS_AS(Expression::parse(""), ParseError);
  CHECK_THROWS_AS(Expression::parse("1 +"), ParseError);
  CHECK_THROWS_AS(Expression::parse("(1 + 2"), ParseError);
  CHECK_THROWS_AS(Expression::parse("1 + 2)"), ParseError);
  CHECK_THROWS_AS(Expression::parse("sin 2"), ParseError);
  CHECK_THROWS_AS(Expression::parse("bogus(2)"), ParseError);
  CHECK_THROWS_AS(Expression::parse("x[2.5]"), ParseError);
  CHECK_THROWS_AS(Expression::parse("x[-1]"), ParseError);
  CHECK_THROWS_AS(Expression::parse("1 & 2"), ParseError);
}

TEST_CASE("single expression broadcasts over every component") {
  const RhsFunction f = rhs_from_expressions("x - t", 2);
  std::vector<double> x = {3.0, 5.0}, y = {0.0, 0.0}, out(2);
  f.eval(1.0, x, y, out);
  CHECK(out[0] == 2.0);
  CHECK(out[1] == 4.0);
  CHECK(f.depends_on_y == false);
}

TEST_CASE("component lists must match the dimension exactly") {
  const RhsFunction f = rhs_from_expressions("-x[1]; x[0] - t", 2);
  std::vector<double> x = {1.0, 2.0}, y = {0.0, 0.0}, out(2);
  f.eval(0.5, x, y, out);
  CHECK(out[0] == -2.0);
  CHECK(out[1] == 0.5);

  CHECK_THROWS_AS(rhs_from_expressions("x[0]; x[1]; x[0]", 2), std::invalid_argument);
  CHECK_THROWS_AS(rhs_from_expressions("x[0]", 0), std::invalid_argument);
}

TEST_CASE("component lists in several dimensions reject the bare shorthand") {
  CHECK_THROWS_AS(rhs_from_expressions("x; x[0]", 2), std::invalid_argument);
  CHECK_THROWS_AS(rhs_from_expressions("y[0]; y", 2), std::invalid_argument);
  // one-dimensional lists may keep it: there is only one component to mean
  CHECK_NOTHROW(rhs_from_expressions("x + y", 1));
}

TEST_CASE("component indices are checked against the dimension") {
  CHECK_THROWS_AS(rhs_from_expressions("x[3]", 2), std::invalid_argument);
  CHECK_THROWS_AS(rhs_from_expressions("y[2]; y[0]", 2), std::invalid_argument);
  CHECK_NOTHROW(rhs_from_expressions("x[1] + y[1]", 2));
}

TEST_CASE("derivative dependence is detected for the certificate engine") {
  CHECK(rhs_from_expressions("y*y", 1).depends_on_y);
  CHECK(rhs_from_expressions("x[0]; y[1]", 2).depends_on_y);
  CHECK_FALSE(rhs_from_expressions("sin(x) + t", 1).depends_on_y);
}

TEST_CASE("time-only functions reject state references") {
  const auto h = time_function_from_expression("2*t + 1");
  CHECK(h(0.5) == 2.0);
  CHECK_THROWS_AS(time_function_from_expression("x + 1"), std::invalid_argument);
  CHECK_THROWS_AS(time_function_from_expression("y[0]"), std::invalid_argument);
}
