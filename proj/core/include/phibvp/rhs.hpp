#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace phibvp {

/// Declared growth envelope ||f(t,x,y)|| <= c0 + c1 * ||y||. The registry
/// entries declare it for the sup norm on components (all norms agree in
/// dimension 1).
struct GrowthHint {
  double c0 = 0.0;
  double c1 = 0.0;
};

/// Right-hand side f(t, x, y), evaluated nodewise on trajectories.
///
/// The assume_* fields are declarations, not sampled facts: they stand in for
/// the regularity hypotheses that no finite sample can decide. They default
/// to true, which is what continuous maps on R^d satisfy.
struct RhsFunction {
  using EvalFn = std::function<void(double t, std::span<const double> x,
                                    std::span<const double> y, std::span<double> out)>;

  std::string name = "f";
  EvalFn eval;
  bool depends_on_y = false;
  std::optional<GrowthHint> growth_hint;

  /// Nonnegative weight h(t) for the inner-product growth condition
  /// ||f(t,x,y)|| <= <f(t,x,y), x> + h(t). Empty when not supplied.
  std::function<double(double)> hilbert_h;

  bool assume_completely_continuous = true;
  bool assume_bounded_image = true;
  bool assume_uniformly_continuous = true;
};

RhsFunction zero_rhs();

/// Every output component equals `value`.
RhsFunction constant_rhs(double value);

/// Forcing term whose exact solution for phi = identity on [0, T] is
/// u*(t) = cos(pi t / (2 T)):  f(t) = -a^2 cos(a t), a = pi / (2 T).
RhsFunction cosine_forcing_identity(double T);

/// Forcing term whose exact solution for phi(y) = y + y^3 on [0, T] is
/// u*(t) = cos(pi t / (2 T)):  f(t) = -a^2 cos(a t) (1 + 3 a^2 sin^2(a t)).
RhsFunction cosine_forcing_cubic(double T);

/// Exact solution and derivative shared by the cosine forcing terms.
double cosine_solution(double T, double t);
double cosine_solution_derivative(double T, double t);

/// Built-in registry for problem files: zero | constant c |
/// cosine_forcing | cosine_forcing_cubic. T is the problem horizon.
RhsFunction make_rhs(const std::string& name, std::span<const double> params, double T);

const std::vector<std::string>& rhs_registry_names();

}  // namespace phibvp
