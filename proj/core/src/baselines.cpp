#include "glin/baselines.hpp"

#include "glin/errors.hpp"
#include "iteration_detail.hpp"

namespace glin {

IterationReport newton_solve(const ProblemDefinition& problem, const StateVector& f,
                             const StateVector& u0, const IterationOptions& opts) {
    return detail::iteration_loop(problem, f, u0, opts, "newton", [&](const StateVector& u) {
        LinearOperatorHandle J =
            problem.has_dense_derivative()
                ? [&] {
                      auto handle = LinearOperatorHandle::from_dense(
                          problem.dense_derivative(u.values()), problem.norm_kind());
                      handle.set_symmetric(problem.derivative_symmetric());
                      return handle;
                  }()
                : LinearOperatorHandle(
                      u.size(),
                      [&problem, u](const Eigen::VectorXd& w) {
                          return problem.apply_derivative(u, u.with_values(w)).values();
                      },
                      problem.norm_kind());
        const StateVector Au = problem.evaluate(u);
        const StateVector residual = Au.with_values(Au.values() - f.values());
        const StateVector correction = solve(J, residual, opts.solve);
        return u.with_values(u.values() - correction.values());
    });
}

IterationReport picard_solve(const ProblemDefinition& problem, const StateVector& f,
                             const StateVector& u0, const IterationOptions& opts) {
    if (!problem.has_identity_remainder()) {
        throw UnsupportedOperationError(
            "picard_solve needs the identity-plus-integral structure (family '" +
            problem.family() + "' does not have it)");
    }
    return detail::iteration_loop(problem, f, u0, opts, "picard", [&](const StateVector& u) {
        return u.with_values(f.values() - problem.identity_remainder(u.values()));
    });
}

}  // namespace glin
