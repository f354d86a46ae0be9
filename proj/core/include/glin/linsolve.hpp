#pragma once

#include <cstdint>

#include "glin/operator.hpp"
#include "glin/state.hpp"

namespace glin {

enum class SolveMethod {
    Auto,               // dense LU when a dense realization exists and n <= 4096, else GMRES
    DenseLU,
    ConjugateGradient,  // requires symmetric + positive-definite flags
    Gmres,
};

struct SolveOptions {
    SolveMethod method = SolveMethod::Auto;
    double tolerance = 1e-12;      // relative residual target, in (0, 1)
    int max_iterations = 2000;     // Krylov iteration cap
    int restart = 30;              // GMRES restart length

    void validate() const;  // throws InvalidArgumentError
};

/// Solve L w = f. The returned state satisfies |L w - f| <= tolerance * |f|
/// in the handle's norm convention. Throws SingularOperatorError (carrying
/// the residual achieved) on numerically singular systems or Krylov
/// stagnation, DimensionError on size mismatch.
StateVector solve(const LinearOperatorHandle& L, const StateVector& f,
                  const SolveOptions& opts = {});

/// Operator norm estimate. Discrete-L2 convention: power iteration on the
/// normal operator (deterministic start vector, seed 0x5EED), relative error
/// <= 1e-3 once the singular-value gap ratio is >= 1.1. Sup convention: the
/// exact max absolute row sum of the dense realization. Throws
/// UnsupportedOperationError when the handle has neither a dense realization
/// nor an adjoint (L2), or no dense realization (sup).
double estimate_operator_norm(const LinearOperatorHandle& L, int iterations = 200);

/// Estimate of |L^-1| (reciprocal of the smallest singular value in the L2
/// convention, max row sum of the dense inverse in the sup convention).
/// Throws SingularOperatorError when L is numerically singular.
double estimate_inverse_norm(const LinearOperatorHandle& L, const SolveOptions& opts = {});

}  // namespace glin
