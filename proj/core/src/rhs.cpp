#include "phibvp/rhs.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace phibvp {

namespace {

double half_pi_over(double T) { return std::numbers::pi / (2.0 * T); }

void require_horizon(double T, const char* who) {
  if (!(T > 0.0) || !std::isfinite(T)) {
    throw std::invalid_argument(std::string(who) + ": horizon T must be positive");
  }
}

}  // namespace

RhsFunction zero_rhs() {
  RhsFunction f;
  f.name = "zero";
  f.eval = [](double, std::span<const double>, std::span<const double>, std::span<double> out) {
    for (double& v : out) v = 0.0;
  };
  f.depends_on_y = false;
  f.growth_hint = GrowthHint{0.0, 0.0};
  return f;
}

RhsFunction constant_rhs(double value) {
  if (!std::isfinite(value)) {
    throw std::invalid_argument("constant_rhs: value must be finite");
  }
  RhsFunction f;
  f.name = "constant";
  f.eval = [value](double, std::span<const double>, std::span<const double>,
                   std::span<double> out) {
    for (double& v : out) v = value;
  };
  f.depends_on_y = false;
  f.growth_hint = GrowthHint{std::abs(value), 0.0};
  return f;
}

RhsFunction cosine_forcing_identity(double T) {
  require_horizon(T, "cosine_forcing_identity");
  const double a = half_pi_over(T);
  RhsFunction f;
  f.name = "cosine_forcing";
  f.eval = [a](double t, std::span<const double>, std::span<const double>,
               std::span<double> out) {
    const double v = -a * a * std::cos(a * t);
    for (double& o : out) o = v;
  };
  f.depends_on_y = false;
  f.growth_hint = GrowthHint{a * a, 0.0};
  return f;
}

RhsFunction cosine_forcing_cubic(double T) {
  require_horizon(T, "cosine_forcing_cubic");
  const double a = half_pi_over(T);
  RhsFunction f;
  f.name = "cosine_forcing_cubic";
  f.eval = [a](double t, std::span<const double>, std::span<const double>,
               std::span<double> out) {
    const double s = std::sin(a * t);
    const double v = -a * a * std::cos(a * t) * (1.0 + 3.0 * a * a * s * s);
    for (double& o : out) o = v;
  };
  f.depends_on_y = false;
  f.growth_hint = GrowthHint{a * a * (1.0 + 3.0 * a * a), 0.0};
  return f;
}

double cosine_solution(double T, double t) {
  require_horizon(T, "cosine_solution");
  return std::cos(half_pi_over(T) * t);
}

double cosine_solution_derivative(double T, double t) {
  require_horizon(T, "cosine_solution_derivative");
  const double a = half_pi_over(T);
  return -a * std::sin(a * t);
}

RhsFunction make_rhs(const std::string& name, std::span<const double> params, double T) {
  auto want = [&](std::size_t count) {
    if (params.size() != count) {
      throw std::invalid_argument("f '" + name + "': expected " + std::to_string(count) +
                                  " parameter(s), got " + std::to_string(params.size()));
    }
  };
  if (name == "zero") {
    want(0);
    return zero_rhs();
  }
  if (name == "constant") {
    want(1);
    return constant_rhs(params[0]);
  }
  if (name == "cosine_forcing") {
    want(0);
    return cosine_forcing_identity(T);
  }
  if (name == "cosine_forcing_cubic") {
    want(0);
    return cosine_forcing_cubic(T);
  }
  throw std::invalid_argument(
      "unknown f '" + name +
      "' (registry: zero, constant, cosine_forcing, cosine_forcing_cubic)");
}

const std::vector<std::string>& rhs_registry_names() {
  static const std::vector<std::string> names = {"zero", "constant", "cosine_forcing",
                                                 "cosine_forcing_cubic"};
  return names;
}

}  // namespace phibvp
