#pragma once

#include "glin/operator.hpp"
#include "glin/problem.hpp"
#include "glin/quadrature.hpp"
#include "glin/state.hpp"

namespace glin {

/// Linearization by quadrature: the handle applies
///   w |-> sum_k weight_k * A'(node_k * u) w.
/// When the problem exposes a dense derivative the sum is assembled densely
/// (fixed summation order, reproducible run to run).
LinearOperatorHandle linearize_by_quadrature(const ProblemDefinition& problem,
                                             const StateVector& u, const QuadratureRule& rule);

/// Closed-form linearization via the family's bounded ratio coefficients.
/// Throws UnsupportedOperationError when the family does not provide one.
/// Agrees with linearize_by_quadrature (m = 16) to 1e-8 in operator action.
LinearOperatorHandle linearize_closed_form(const ProblemDefinition& problem,
                                           const StateVector& u);

/// Normalized factorization defect  |A(u) - L(u)u| / (1 + |A(u)|)  with L
/// built by quadrature. For nonlinearities polynomial in the segment
/// parameter of degree <= 2m-1 the rule is exact and the defect is at
/// rounding level.
double factorization_residual(const ProblemDefinition& problem, const StateVector& u,
                              const QuadratureRule& rule);

}  // namespace glin
