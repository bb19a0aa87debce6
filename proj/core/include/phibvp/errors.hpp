#pragma once

#include <stdexcept>
#include <string>

namespace phibvp {

/// Thrown when a user-supplied function produces non-finite values or an
/// iterative kernel (scalar inversion, quadrature pipeline) fails to converge.
class EvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown by the text readers (problem files, expressions, alpha
/// s-expressions, solution CSV). `line` is 1-based, 0 when not applicable.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& message, int line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message
                                    : message),
        line_(line) {}

  int line() const { return line_; }

 private:
  int line_ = 0;
};

}  // namespace phibvp
