#include "phibvp/operators.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "phibvp/calculus.hpp"
#include "phibvp/errors.hpp"

namespace phibvp {

namespace {

void require_problem_shape(const Problem& p, const Trajectory& tr, const char* who) {
  if (tr.dim() != p.dim()) {
    throw std::invalid_argument(std::string(who) + ": trajectory dimension " +
                                std::to_string(tr.dim()) + " does not match problem dimension " +
                                std::to_string(p.dim()));
  }
  if (std::abs(tr.grid.length() - p.T()) > 1e-12 * (p.T() + 1.0)) {
    throw std::invalid_argument(std::string(who) + ": trajectory grid does not cover [0, T]");
  }
  if (tr.u.size() != tr.grid.size() || tr.du.size() != tr.grid.size()) {
    throw std::invalid_argument(std::string(who) + ": trajectory arrays do not match its grid");
  }
}

}  // namespace

NodeArray nemytskii(const Problem& p, const Trajectory& tr) {
  require_problem_shape(p, tr, "nemytskii");
  const std::size_t n = tr.grid.size();
  const std::size_t d = p.dim();

  NodeArray F(n, d);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = tr.grid.node(i);
    p.f().eval(t, tr.u.node(i), tr.du.node(i), F.node(i));
    for (double v : F.node(i)) {
      if (!std::isfinite(v)) {
        std::ostringstream msg;
        msg << "nemytskii: f returned a non-finite value at node " << i << " (t = " << t << ")";
        throw EvaluationError(msg.str());
      }
    }
  }
  return F;
}

NodeArray phi_inverse_lift(const Problem& p, const NodeArray& V) {
  if (V.dim() != p.dim()) {
    throw std::invalid_argument("phi_inverse_lift: dimension mismatch");
  }
  NodeArray W(V.size(), V.dim());
  for (std::size_t i = 0; i < V.size(); ++i) {
    p.phi().inverse(V.node(i), W.node(i));
  }
  return W;
}

Trajectory apply_M(const Problem& p, double lambda, const Trajectory& tr) {
  require_problem_shape(p, tr, "apply_M");
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw std::invalid_argument("apply_M: lambda must lie in [0, 1]");
  }

  NodeArray F = nemytskii(p, tr);
  NodeArray V = cumulative_integral(tr.grid, F);
  for (double& v : V.flat()) v *= lambda;

  Trajectory out;
  out.grid = tr.grid;
  out.du = phi_inverse_lift(p, V);
  // V at node 0 is exactly 0 and phi(0) = 0 is a PhiMap invariant, so the
  // exact lift value at node 0 is 0; storing it keeps the left boundary
  // condition exact regardless of round-off in a supplied inverse.
  for (double& v : out.du.node(0)) v = 0.0;
  out.u = reverse_negated_integral(tr.grid, out.du);
  return out;
}

double fixed_point_gap(const Problem& p, const Trajectory& tr) {
  return c1_distance(tr, apply_M(p, 1.0, tr), p.norm());
}

double ode_residual(const Problem& p, const Trajectory& tr) {
  return detail::stage_residual(p, 1.0, tr);
}

namespace detail {

double stage_residual(const Problem& p, double lambda, const Trajectory& tr) {
  require_problem_shape(p, tr, "ode_residual");
  const std::size_t n = tr.grid.size();
  if (n < 3) {
    throw std::invalid_argument("ode_residual: need at least 3 nodes");
  }
  const std::size_t d = p.dim();

  NodeArray phi_du(n, d);
  for (std::size_t i = 0; i < n; ++i) {
    p.phi().forward(tr.du.node(i), phi_du.node(i));
  }
  NodeArray D = discrete_derivative(tr.grid, phi_du);
  NodeArray F = nemytskii(p, tr);

  std::vector<double> defect(d);
  double r = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    auto di = D.node(i);
    auto fi = F.node(i);
    for (std::size_t c = 0; c < d; ++c) defect[c] = di[c] - lambda * fi[c];
    r = std::max(r, vector_norm(p.norm(), defect));
  }
  r = std::max(r, vector_norm(p.norm(), tr.u.node(n - 1)));
  r = std::max(r, vector_norm(p.norm(), tr.du.node(0)));
  return r;
}

}  // namespace detail

}  // namespace phibvp
