#pragma once

#include <limits>
#include <string>

#include "glin/errors.hpp"
#include "glin/iterate.hpp"

namespace glin::detail {

// Shared driver for the relinearized fixed-point loop, Newton and Picard:
// each supplies the map from the current iterate to the next and shares the
// stopping rules and report schema.
template <typename NextFn>
IterationReport iteration_loop(const ProblemDefinition& problem, const StateVector& f,
                               const StateVector& u0, const IterationOptions& opts,
                               const std::string& method, NextFn next) {
    opts.validate();
    require_compatible(f, u0);
    if (f.size() != problem.mesh()->size()) {
        throw DimensionError("right-hand side does not match the problem mesh");
    }

    IterationReport report;
    report.method = method;
    report.ball_radius = opts.ball_radius;

    const double f_norm = f.norm();
    StateVector u = u0;

    auto record_iterate = [&](const StateVector& v) {
        const double vn = v.norm();
        report.iterate_norms.push_back(vn);
        if (opts.ball_radius) {
            report.in_ball.push_back(vn <= *opts.ball_radius + 1e-12);
        }
    };
    auto residual_of = [&](const StateVector& v) {
        const StateVector Av = problem.evaluate(v);
        return Av.with_values(Av.values() - f.values()).norm();
    };

    record_iterate(u);
    double res = residual_of(u);
    report.residual_norms.push_back(res);
    if (res <= opts.residual_tolerance * (1.0 + f_norm)) {
        report.termination = TerminationReason::ConvergedResidual;  // converged at iteration 0
        report.final_state = u;
        return report;
    }

    for (int n = 0; n < opts.max_iterations; ++n) {
        StateVector u_next = u;
        try {
            u_next = next(u);
        } catch (const SingularOperatorError& err) {
            report.termination = TerminationReason::SingularOperator;
            report.note = err.what();
            report.final_state = u;
            return report;
        }
        if (!u_next.values().allFinite()) {
            report.termination = TerminationReason::Diverged;
            report.note = "non-finite iterate";
            report.final_state = u;
            return report;
        }

        const double u_norm = u.norm();
        const double step = u_next.with_values(u_next.values() - u.values()).norm();
        report.step_norms.push_back(step);
        if (report.step_norms.size() >= 2) {
            const double prev = report.step_norms[report.step_norms.size() - 2];
            report.ratios.push_back(prev > 0.0 ? step / prev
                                               : std::numeric_limits<double>::infinity());
        }
        record_iterate(u_next);
        res = residual_of(u_next);
        report.residual_norms.push_back(res);
        u = u_next;

        if (res <= opts.residual_tolerance * (1.0 + f_norm)) {
            report.termination = TerminationReason::ConvergedResidual;
            report.final_state = u;
            return report;
        }
        if (step <= opts.step_tolerance * (1.0 + u_norm)) {
            report.termination = TerminationReason::ConvergedStep;
            report.final_state = u;
            return report;
        }
        // growth by a factor >= 10 over 5 consecutive steps
        const std::size_t k = report.step_norms.size();
        if (k >= 6 && report.step_norms[k - 1] >= 10.0 * report.step_norms[k - 6] &&
            report.step_norms[k - 1] > 0.0) {
            report.termination = TerminationReason::Diverged;
            report.note = "step norms grew by >= 10x over 5 iterations";
            report.final_state = u;
            return report;
        }
    }
    report.termination = TerminationReason::MaxIterations;
    report.final_state = u;
    return report;
}

}  // namespace glin::detail
