#pragma once

#include <optional>
#include <string>
#include <vector>

#include "glin/linsolve.hpp"
#include "glin/problem.hpp"
#include "glin/quadrature.hpp"

namespace glin {

enum class LinearizerKind {
    Quadrature,
    ClosedForm,
};

struct IterationOptions {
    int max_iterations = 100;
    double step_tolerance = 1e-10;      // relative: |u_{n+1}-u_n| <= tol*(1+|u_n|)
    double residual_tolerance = 1e-10;  // relative: |A(u)-f| <= tol*(1+|f|)
    int quadrature_order = 8;
    LinearizerKind linearizer = LinearizerKind::Quadrature;
    SolveOptions solve;
    std::optional<double> ball_radius;  // record membership flags when set

    void validate() const;
};

enum class TerminationReason {
    ConvergedStep,
    ConvergedResidual,
    MaxIterations,
    Diverged,
    SingularOperator,
};

/// Spelling used in reports and CSV output.
std::string to_string(TerminationReason reason);

/// Per-run record: step norms |u_{n+1}-u_n|, residual norms |A(u_n)-f|,
/// successive step ratios, iterate norms (starting at u_0) and optional
/// ball-membership flags.
struct IterationReport {
    std::string method;  // "global", "newton" or "picard"
    std::vector<double> step_norms;
    std::vector<double> residual_norms;
    std::vector<double> ratios;         // step_norms[n]/step_norms[n-1], n >= 1
    std::vector<double> iterate_norms;  // |u_0|, |u_1|, ...
    std::vector<bool> in_ball;          // |u_n| <= ball_radius, when radius set
    std::optional<double> ball_radius;
    TerminationReason termination = TerminationReason::MaxIterations;
    std::string note;  // detail for singular/diverged terminations
    std::optional<StateVector> final_state;

    int iterations() const noexcept { return static_cast<int>(step_norms.size()); }
    bool converged() const noexcept {
        return termination == TerminationReason::ConvergedStep ||
               termination == TerminationReason::ConvergedResidual;
    }
};

/// The relinearized fixed-point iteration: u_{n+1} solves L(u_n) w = f with
/// L(u_n) rebuilt from the current iterate each step. Stops on the relative
/// step or residual criterion, the iteration cap, growth of step norms by a
/// factor >= 10 over 5 consecutive steps (diverged) or a singular
/// linearization (recorded, not thrown).
IterationReport run_fixed_point(const ProblemDefinition& problem, const StateVector& f,
                                const StateVector& u0, const IterationOptions& opts = {});

/// Empirical contraction factor: the largest step ratio over the trailing
/// half of the run (the transient is discarded). A value < 1 is the sampled
/// analogue of the contraction hypothesis; it is a surrogate, not a
/// certified constant. Throws InsufficientDataError below 3 recorded steps.
double empirical_contraction(const IterationReport& report);

struct BallCheck {
    double radius = 0.0;   // |u_0| + |u_1 - u_0| / (1 - Q)
    bool all_inside = false;
};

/// Radius of the invariant ball implied by the first step and contraction
/// factor Q in (0, 1), plus a check that every recorded iterate stayed
/// inside (with 1e-12 slack).
BallCheck invariant_ball(const IterationReport& report, const StateVector& u0, double Q);

struct ContractionInterval {
    double q_max = 0.0;   // supremum of admissible Lipschitz constants (open)
    double Q_of_R = 0.0;  // contraction factor the radius R supports
    bool feasible = false;
};

/// Feasible range of inverse-Lipschitz constants for a given ball radius:
/// q_max = |f|^-1 (1 - |w_1 - u_0| / (R - |u_0|)) with w_1 = L0^-1 f.
/// Infeasible R (ratio >= 1) yields q_max = 0. The interval is open: only
/// q < q_max certifies a contraction.
ContractionInterval feasible_contraction(const StateVector& u0, const StateVector& f, double R,
                                         const LinearOperatorHandle& L0,
                                         const SolveOptions& opts = {});

/// Run the iteration from several starts and return the maximum pairwise
/// distance between final states; small values echo uniqueness of the fixed
/// point. Throws Error naming the start and reason when any run fails.
double uniqueness_probe(const ProblemDefinition& problem, const StateVector& f,
                        const std::vector<StateVector>& starts,
                        const IterationOptions& opts = {});

}  // namespace glin
