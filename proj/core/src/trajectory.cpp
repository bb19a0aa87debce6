#include "phibvp/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace phibvp {

namespace {

void require_compatible(const Trajectory& a, const Trajectory& b, const char* who) {
  if (a.grid.size() != b.grid.size() || a.dim() != b.dim()) {
    throw std::invalid_argument(std::string(who) + ": trajectory shapes differ");
  }
}

}  // namespace

Trajectory make_zero_trajectory(const Grid& grid, std::size_t dim) {
  if (grid.size() < 2) {
    throw std::invalid_argument("make_zero_trajectory: grid is empty");
  }
  if (dim == 0) {
    throw std::invalid_argument("make_zero_trajectory: dimension must be positive");
  }
  Trajectory tr;
  tr.grid = grid;
  tr.u = NodeArray(grid.size(), dim);
  tr.du = NodeArray(grid.size(), dim);
  return tr;
}

double norm_c1(const Trajectory& tr, VectorNormKind kind) {
  double m = 0.0;
  for (std::size_t i = 0; i < tr.grid.size(); ++i) {
    m = std::max(m, vector_norm(kind, tr.u.node(i)));
    m = std::max(m, vector_norm(kind, tr.du.node(i)));
  }
  return m;
}

double c1_distance(const Trajectory& a, const Trajectory& b, VectorNormKind kind) {
  require_compatible(a, b, "c1_distance");
  const std::size_t d = a.dim();
  std::vector<double> diff(d);
  double m = 0.0;
  for (std::size_t i = 0; i < a.grid.size(); ++i) {
    auto ua = a.u.node(i), ub = b.u.node(i);
    for (std::size_t c = 0; c < d; ++c) diff[c] = ua[c] - ub[c];
    m = std::max(m, vector_norm(kind, diff));
    auto da = a.du.node(i), db = b.du.node(i);
    for (std::size_t c = 0; c < d; ++c) diff[c] = da[c] - db[c];
    m = std::max(m, vector_norm(kind, diff));
  }
  return m;
}

Trajectory blend(const Trajectory& a, const Trajectory& b, double theta) {
  require_compatible(a, b, "blend");
  Trajectory out = a;
  auto ua = out.u.flat();
  auto ub = b.u.flat();
  for (std::size_t i = 0; i < ua.size(); ++i) ua[i] = (1.0 - theta) * ua[i] + theta * ub[i];
  auto da = out.du.flat();
  auto db = b.du.flat();
  for (std::size_t i = 0; i < da.size(); ++i) da[i] = (1.0 - theta) * da[i] + theta * db[i];
  return out;
}

Trajectory resample_linear(const Trajectory& tr, const Grid& fine) {
  if (std::abs(tr.grid.length() - fine.length()) > 1e-12 * (tr.grid.length() + 1.0)) {
    throw std::invalid_argument("resample_linear: grids cover different intervals");
  }
  const std::size_t n = tr.grid.size();
  const std::size_t d = tr.dim();
  const double h = tr.grid.spacing();

  Trajectory out = make_zero_trajectory(fine, d);
  for (std::size_t i = 0; i < fine.size(); ++i) {
    const double t = fine.node(i);
    std::size_t j = static_cast<std::size_t>(std::clamp(
        std::floor(t / h), 0.0, static_cast<double>(n - 2)));
    const double w = (t - tr.grid.node(j)) / h;
    auto u0 = tr.u.node(j), u1 = tr.u.node(j + 1);
    auto d0 = tr.du.node(j), d1 = tr.du.node(j + 1);
    auto uo = out.u.node(i), dv = out.du.node(i);
    for (std::size_t c = 0; c < d; ++c) {
      uo[c] = (1.0 - w) * u0[c] + w * u1[c];
      dv[c] = (1.0 - w) * d0[c] + w * d1[c];
    }
  }
  return out;
}

}  // namespace phibvp
