#pragma once

#include "phibvp/grid.hpp"
#include "phibvp/node_array.hpp"

namespace phibvp {

/// Running trapezoid primitive from the left endpoint:
/// V_0 = 0, V_i = V_{i-1} + (h/2)(F_{i-1} + F_i).
NodeArray cumulative_integral(const Grid& grid, const NodeArray& F);

/// Negated tail integral, accumulated from the right endpoint:
/// U_{n-1} = 0, U_i = U_{i+1} - (h/2)(W_i + W_{i+1}).
/// Equals -integral_t^T W(s) ds under the same trapezoid rule.
NodeArray reverse_negated_integral(const Grid& grid, const NodeArray& W);

/// Second-order difference quotients: central stencils inside, 3-point
/// one-sided stencils at both ends. Requires n >= 3.
NodeArray discrete_derivative(const Grid& grid, const NodeArray& V);

}  // namespace phibvp
