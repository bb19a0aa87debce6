#include "phibvp/phi_map.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "phibvp/errors.hpp"

namespace phibvp {

namespace detail {

double invert_monotone_scalar(const PhiMap::ScalarFn& f, const PhiMap::ScalarFn& derivative,
                              double target) {
  const double tol = 1e-12 * (1.0 + std::abs(target));

  double w = 0.0;
  double r = f(w) - target;
  if (std::abs(r) <= tol) return w;

  // Orientation from a symmetric probe; widen if the probe looks flat.
  double probe = 1.0;
  double slope = 0.0;
  for (int i = 0; i < 60 && slope == 0.0; ++i, probe *= 4.0) {
    slope = f(probe) - f(-probe);
  }
  if (slope == 0.0 || !std::isfinite(slope)) {
    throw EvaluationError("phi inverse: map looks constant, cannot invert");
  }
  const double dir = slope > 0.0 ? 1.0 : -1.0;

  // g is increasing with the same root as f(w) = target.
  auto g = [&](double x) { return (f(x) - target) * dir; };

  // Expand a bracket [lo, hi] with g(lo) <= 0 <= g(hi).
  double lo = 0.0, hi = 0.0;
  double glo = r * dir, ghi = r * dir;
  double step = 1.0;
  for (int i = 0; i < 200 && (glo > 0.0 || ghi < 0.0); ++i, step *= 2.0) {
    if (ghi < 0.0) {
      lo = hi;
      glo = ghi;
      hi += step;
      ghi = g(hi);
    } else {
      hi = lo;
      ghi = glo;
      lo -= step;
      glo = g(lo);
    }
  }
  if (glo > 0.0 || ghi < 0.0) {
    throw EvaluationError("phi inverse: failed to bracket the target value");
  }

  // Safeguarded Newton: fall back to bisection whenever the Newton step
  // leaves the bracket or the derivative is unusable.
  w = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    const double gw = g(w);
    if (std::abs(gw) <= tol) return w;
    if (gw > 0.0) {
      hi = w;
    } else {
      lo = w;
    }
    double next = std::numeric_limits<double>::quiet_NaN();
    if (derivative) {
      const double dw = derivative(w);
      if (std::isfinite(dw) && dw != 0.0) next = w - gw * dir / dw;
    }
    if (!std::isfinite(next) || next <= lo || next >= hi) {
      next = 0.5 * (lo + hi);
    }
    if (next == w) return w;
    w = next;
  }
  if (std::abs(f(w) - target) <= 1e-9 * (1.0 + std::abs(target))) return w;
  throw EvaluationError("phi inverse: Newton/bisection did not converge");
}

}  // namespace detail

PhiMap PhiMap::componentwise(std::string name, ScalarFn forward, ScalarFn inverse,
                             ScalarFn derivative, std::optional<double> lipschitz_inverse_hint,
                             std::optional<bool> monotone_hint) {
  if (!forward) {
    throw std::invalid_argument("PhiMap::componentwise: forward map is required");
  }
  PhiMap m;
  m.name_ = std::move(name);
  m.k_hint_ = lipschitz_inverse_hint;
  m.monotone_hint_ = monotone_hint;
  m.forward_ = [fwd = forward](std::span<const double> in, std::span<double> out) {
    for (std::size_t c = 0; c < in.size(); ++c) out[c] = fwd(in[c]);
  };
  if (inverse) {
    m.inverse_ = [inv = std::move(inverse)](std::span<const double> in, std::span<double> out) {
      for (std::size_t c = 0; c < in.size(); ++c) out[c] = inv(in[c]);
    };
  } else {
    m.inverse_ = [fwd = std::move(forward), der = std::move(derivative)](
                     std::span<const double> in, std::span<double> out) {
      for (std::size_t c = 0; c < in.size(); ++c) {
        out[c] = detail::invert_monotone_scalar(fwd, der, in[c]);
      }
    };
  }
  return m;
}

PhiMap PhiMap::vector_map(std::string name, VectorFn forward, VectorFn inverse,
                          std::optional<double> lipschitz_inverse_hint,
                          std::optional<bool> monotone_hint) {
  if (!forward || !inverse) {
    throw std::invalid_argument("PhiMap::vector_map: forward and inverse are both required");
  }
  PhiMap m;
  m.name_ = std::move(name);
  m.forward_ = std::move(forward);
  m.inverse_ = std::move(inverse);
  m.k_hint_ = lipschitz_inverse_hint;
  m.monotone_hint_ = monotone_hint;
  return m;
}

void PhiMap::forward(std::span<const double> in, std::span<double> out) const {
  forward_(in, out);
}

void PhiMap::inverse(std::span<const double> in, std::span<double> out) const {
  inverse_(in, out);
}

void PhiMap::validate(std::size_t dim) const {
  if (dim == 0) {
    throw std::invalid_argument("PhiMap::validate: dimension must be positive");
  }
  std::vector<double> x(dim), v(dim), back(dim);

  forward(x, v);
  for (std::size_t c = 0; c < dim; ++c) {
    if (!(std::abs(v[c]) == 0.0)) {
      throw std::invalid_argument("PhiMap '" + name_ + "': phi(0) != 0");
    }
  }

  constexpr double points[] = {-2.5, -1.0, -0.3, 0.0, 0.4, 1.0, 3.0};
  for (double s : points) {
    for (std::size_t c = 0; c < dim; ++c) {
      x[c] = s * (1.0 + 0.1 * static_cast<double>(c));
    }
    forward(x, v);
    inverse(v, back);
    for (std::size_t c = 0; c < dim; ++c) {
      if (!std::isfinite(back[c]) || std::abs(back[c] - x[c]) > 1e-10 * (1.0 + std::abs(x[c]))) {
        throw std::invalid_argument("PhiMap '" + name_ +
                                    "': inverse(forward(x)) != x beyond round-trip tolerance");
      }
    }
  }
}

namespace {

PhiMap make_identity() {
  return PhiMap::componentwise(
      "identity", [](double y) { return y; }, [](double v) { return v; },
      [](double) { return 1.0; }, 1.0, true);
}

PhiMap make_scale(double a) {
  if (a == 0.0 || !std::isfinite(a)) {
    throw std::invalid_argument("phi 'scale': parameter must be nonzero and finite");
  }
  return PhiMap::componentwise(
      "scale", [a](double y) { return a * y; }, [a](double v) { return v / a; },
      [a](double) { return a; }, 1.0 / std::abs(a), a > 0.0);
}

PhiMap make_cubic() {
  return PhiMap::componentwise(
      "cubic", [](double y) { return y + y * y * y; }, nullptr,
      [](double y) { return 1.0 + 3.0 * y * y; }, 1.0, true);
}

PhiMap make_atan_shift(double a) {
  if (!(a > 0.0) || !std::isfinite(a)) {
    throw std::invalid_argument("phi 'atan_shift': parameter must be positive and finite");
  }
  return PhiMap::componentwise(
      "atan_shift", [a](double y) { return y + a * std::atan(y); }, nullptr,
      [a](double y) { return 1.0 + a / (1.0 + y * y); }, 1.0, true);
}

}  // namespace

PhiMap make_phi(const std::string& name, std::span<const double> params) {
  auto want = [&](std::size_t count) {
    if (params.size() != count) {
      throw std::invalid_argument("phi '" + name + "': expected " + std::to_string(count) +
                                  " parameter(s), got " + std::to_string(params.size()));
    }
  };
  if (name == "identity") {
    want(0);
    return make_identity();
  }
  if (name == "scale") {
    want(1);
    return make_scale(params[0]);
  }
  if (name == "cubic") {
    want(0);
    return make_cubic();
  }
  if (name == "atan_shift") {
    want(1);
    return make_atan_shift(params[0]);
  }
  throw std::invalid_argument("unknown phi '" + name +
                              "' (registry: identity, scale, cubic, atan_shift)");
}

const std::vector<std::string>& phi_registry_names() {
  static const std::vector<std::string> names = {"identity", "scale", "cubic", "atan_shift"};
  return names;
}

}  // namespace phibvp
