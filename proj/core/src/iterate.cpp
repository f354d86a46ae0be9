#include "glin/iterate.hpp"

#include <algorithm>
#include <cmath>

#include "glin/errors.hpp"
#include "glin/linearize.hpp"
#include "iteration_detail.hpp"

namespace glin {

void IterationOptions::validate() const {
    if (max_iterations < 1) {
        throw InvalidArgumentError("iteration max_iterations must be >= 1");
    }
    if (!(step_tolerance > 0.0) || !(residual_tolerance > 0.0)) {
        throw InvalidArgumentError("iteration tolerances must be positive");
    }
    if (quadrature_order < 1) {
        throw InvalidArgumentError("quadrature order must be >= 1");
    }
    solve.validate();
}

std::string to_string(TerminationReason reason) {
    switch (reason) {
        case TerminationReason::ConvergedStep: return "converged-step";
        case TerminationReason::ConvergedResidual: return "converged-residual";
        case TerminationReason::MaxIterations: return "max-iter";
        case TerminationReason::Diverged: return "diverged";
        case TerminationReason::SingularOperator: return "singular-L";
    }
    return "unknown";
}

IterationReport run_fixed_point(const ProblemDefinition& problem, const StateVector& f,
                                const StateVector& u0, const IterationOptions& opts) {
    const QuadratureRule rule = gauss_legendre(opts.quadrature_order);
    return detail::iteration_loop(problem, f, u0, opts, "global", [&](const StateVector& u) {
        const LinearOperatorHandle L = (opts.linearizer == LinearizerKind::ClosedForm)
                                           ? linearize_closed_form(problem, u)
                                           : linearize_by_quadrature(problem, u, rule);
        return solve(L, f, opts.solve);
    });
}

double empirical_contraction(const IterationReport& report) {
    if (report.step_norms.size() < 3) {
        throw InsufficientDataError("empirical contraction needs at least 3 recorded steps");
    }
    const std::size_t count = report.ratios.size();
    const std::size_t tail = (count + 1) / 2;  // discard the transient half
    double q_hat = 0.0;
    for (std::size_t i = count - tail; i < count; ++i) {
        q_hat = std::max(q_hat, report.ratios[i]);
    }
    return q_hat;
}

BallCheck invariant_ball(const IterationReport& report, const StateVector& u0, double Q) {
    if (!(Q > 0.0) || !(Q < 1.0)) {
        throw InvalidArgumentError("invariant ball needs a contraction factor in (0, 1)");
    }
    if (report.step_norms.empty() || report.iterate_norms.size() < 2) {
        throw InsufficientDataError("invariant ball needs at least one recorded step");
    }
    BallCheck check;
    check.radius = u0.norm() + report.step_norms.front() / (1.0 - Q);
    check.all_inside = true;
    for (double vn : report.iterate_norms) {
        if (vn > check.radius + 1e-12) {
            check.all_inside = false;
            break;
        }
    }
    return check;
}

ContractionInterval feasible_contraction(const StateVector& u0, const StateVector& f, double R,
                                         const LinearOperatorHandle& L0,
                                         const SolveOptions& opts) {
    require_compatible(u0, f);
    const double u0_norm = u0.norm();
    const double f_norm = f.norm();
    if (f_norm == 0.0) {
        throw InvalidArgumentError("feasible_contraction: zero right-hand side (solution is 0)");
    }
    if (!(R > u0_norm)) {
        throw InvalidArgumentError("feasible_contraction: radius must exceed |u0|");
    }
    const StateVector w1 = solve(L0, f, opts);
    const double first_step = w1.with_values(w1.values() - u0.values()).norm();
    const double ratio = first_step / (R - u0_norm);

    ContractionInterval interval;
    interval.Q_of_R = 1.0 - ratio;
    interval.feasible = ratio < 1.0;
    interval.q_max = interval.feasible ? interval.Q_of_R / f_norm : 0.0;
    return interval;
}

double uniqueness_probe(const ProblemDefinition& problem, const StateVector& f,
                        const std::vector<StateVector>& starts, const IterationOptions& opts) {
    if (starts.size() < 2) {
        throw InvalidArgumentError("uniqueness probe needs at least 2 starts");
    }
    std::vector<StateVector> finals;
    finals.reserve(starts.size());
    for (std::size_t i = 0; i < starts.size(); ++i) {
        IterationReport report = run_fixed_point(problem, f, starts[i], opts);
        if (!report.converged()) {
            throw Error("uniqueness probe: run from start " + std::to_string(i) +
                        " terminated with " + to_string(report.termination));
        }
        finals.push_back(*report.final_state);
    }
    double max_distance = 0.0;
    for (std::size_t i = 0; i < finals.size(); ++i) {
        for (std::size_t j = i + 1; j < finals.size(); ++j) {
            const double d =
                finals[i].with_values(finals[i].values() - finals[j].values()).norm();
            max_distance = std::max(max_distance, d);
        }
    }
    return max_distance;
}

}  // namespace glin
