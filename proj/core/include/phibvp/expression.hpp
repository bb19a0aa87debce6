#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string>

#include "phibvp/rhs.hpp"

namespace phibvp {

// Arithmetic over t (time), x (state), y (derivative): +, -, *, /, unary
// minus, sin/cos/exp/tanh, parentheses, numeric literals, and pi. In a
// vector-valued problem x[i] and y[i] pick components; bare x and y refer to
// the component currently being evaluated.
class Expression {
 public:
  static Expression parse(const std::string& text);

  double eval(double t, std::span<const double> x, std::span<const double> y,
              int component = 0) const;

  bool uses_state() const { return uses_state_; }
  bool uses_derivative() const { return uses_derivative_; }
  bool uses_bare_state() const { return uses_bare_state_; }
  bool uses_bare_derivative() const { return uses_bare_derivative_; }
  int max_state_index() const { return max_state_index_; }            // -1 if unused
  int max_derivative_index() const { return max_derivative_index_; }  // -1 if unused
  const std::string& text() const { return text_; }

  struct Node;

 private:
  std::shared_ptr<const Node> root_;
  std::string text_;
  bool uses_state_ = false;
  bool uses_derivative_ = false;
  bool uses_bare_state_ = false;
  bool uses_bare_derivative_ = false;
  int max_state_index_ = -1;
  int max_derivative_index_ = -1;
};

// Builds a right-hand side from either one expression (applied to every
// component) or a ';'-separated list with exactly one expression per
// component. Component lists with dim > 1 must use indexed x[i]/y[i].
RhsFunction rhs_from_expressions(const std::string& spec, int dim);

// Scalar function of time only; any reference to x or y is rejected.
std::function<double(double)> time_function_from_expression(const std::string& text);

}  // namespace phibvp
