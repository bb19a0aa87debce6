#pragma once

#include "phibvp/problem.hpp"
#include "phibvp/trajectory.hpp"

namespace phibvp {

/// Superposition samples F_i = f(t_i, u_i, du_i). Throws EvaluationError
/// naming the node when f returns a non-finite value.
NodeArray nemytskii(const Problem& p, const Trajectory& tr);

/// W_i = phi^{-1}(V_i), nodewise.
NodeArray phi_inverse_lift(const Problem& p, const NodeArray& V);

/// One application of the homotopy fixed-point map, lambda in [0, 1]:
///   du_new = phi^{-1}( lambda * cumulative_integral(nemytskii(tr)) )
///   u_new  = reverse_negated_integral(du_new)
/// By construction u_new at the last node and du_new at node 0 are exactly 0.
Trajectory apply_M(const Problem& p, double lambda, const Trajectory& tr);

/// c1 distance between tr and apply_M(p, 1, tr).
double fixed_point_gap(const Problem& p, const Trajectory& tr);

/// Defect of the differential equation at full strength (lambda = 1):
/// sup_i |D(phi(du))_i - F_i| in the problem norm, D the discrete derivative,
/// plus the boundary penalties |u_{n-1}| and |du_0|. Requires n >= 3.
double ode_residual(const Problem& p, const Trajectory& tr);

namespace detail {

/// ode_residual generalized to a continuation stage: the equation at stage
/// lambda is (phi(u'))' = lambda * f.
double stage_residual(const Problem& p, double lambda, const Trajectory& tr);

}  // namespace detail

}  // namespace phibvp
