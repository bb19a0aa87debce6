#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace phibvp {

/// Invertible gradient-type map phi: R^d -> R^d with phi(0) = 0, applied
/// pointwise to derivative samples. Componentwise maps may omit the inverse:
/// a safeguarded Newton/bisection solve (tolerance 1e-12) is used instead,
/// assuming the scalar map is strictly monotone.
class PhiMap {
 public:
  using ScalarFn = std::function<double(double)>;
  using VectorFn = std::function<void(std::span<const double>, std::span<double>)>;

  /// Scalar homeomorphism applied to each component. `inverse` and
  /// `derivative` may be null; the derivative, when given, speeds up the
  /// numeric inversion.
  static PhiMap componentwise(std::string name, ScalarFn forward, ScalarFn inverse,
                              ScalarFn derivative = nullptr,
                              std::optional<double> lipschitz_inverse_hint = {},
                              std::optional<bool> monotone_hint = {});

  /// General map with a supplied inverse.
  static PhiMap vector_map(std::string name, VectorFn forward, VectorFn inverse,
                           std::optional<double> lipschitz_inverse_hint = {},
                           std::optional<bool> monotone_hint = {});

  const std::string& name() const { return name_; }
  std::optional<double> lipschitz_inverse_hint() const { return k_hint_; }
  std::optional<bool> monotone_hint() const { return monotone_hint_; }

  void forward(std::span<const double> in, std::span<double> out) const;
  void inverse(std::span<const double> in, std::span<double> out) const;

  /// Checks phi(0) = 0 and the inverse(forward(x)) = x round trip (tolerance
  /// 1e-10) on a fixed set of sample points; throws std::invalid_argument.
  void validate(std::size_t dim) const;

 private:
  PhiMap() = default;

  std::string name_;
  VectorFn forward_;
  VectorFn inverse_;
  std::optional<double> k_hint_;
  std::optional<bool> monotone_hint_;
};

/// Built-in registry:
///   identity                  phi(y) = y          (k = 1)
///   scale a                   phi(y) = a*y        (k = 1/|a|)
///   cubic                     phi(y) = y + y^3    (k = 1, numeric inverse)
///   atan_shift a              phi(y) = y + a*atan(y), a > 0 (k = 1, numeric inverse)
PhiMap make_phi(const std::string& name, std::span<const double> params = {});

const std::vector<std::string>& phi_registry_names();

namespace detail {

/// Solves f(w) = target for strictly monotone scalar f by bracket expansion
/// plus safeguarded Newton (derivative optional, bisection fallback).
/// Converges to |f(w) - target| <= 1e-12 * (1 + |target|).
double invert_monotone_scalar(const PhiMap::ScalarFn& f, const PhiMap::ScalarFn& derivative,
                              double target);

}  // namespace detail

}  // namespace phibvp
