#pragma once

#include "glin/iterate.hpp"

namespace glin {

/// Local-linearization reference: u_{n+1} = u_n - [A'(u_n)]^-1 (A(u_n) - f).
/// Plain Newton, no damping; shares the stopping rules and report schema of
/// run_fixed_point. A singular derivative is recorded in the report.
IterationReport newton_solve(const ProblemDefinition& problem, const StateVector& f,
                             const StateVector& u0, const IterationOptions& opts = {});

/// Direct substitution u_{n+1} = f - B(u_n) for families with the
/// identity-plus-integral structure A = I + B. Throws
/// UnsupportedOperationError otherwise.
IterationReport picard_solve(const ProblemDefinition& problem, const StateVector& f,
                             const StateVector& u0, const IterationOptions& opts = {});

}  // namespace glin
