#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "glin/linsolve.hpp"
#include "glin/problem.hpp"
#include "glin/quadrature.hpp"

namespace glin {

inline constexpr std::uint64_t kDefaultSeed = 0x5EED;

/// Numerically estimated constants of the convergence and invertibility
/// hypotheses, with verdicts. All sampled quantities are lower bounds of the
/// suprema they estimate (max over a finite sample); verdicts are empirical,
/// never proofs, and the estimation method of each constant is recorded.
struct Certificate {
    double p = 0.0;              // norm bound of the inverse base derivative [A'(0)]^-1
    double s = 0.0;              // sampled sup of |A'(tu) - A'(0)| over the ball
    double ps = 0.0;             // product p*s
    double inverse_bound = 0.0;  // p / (1 - ps); +inf when ps >= 1
    bool inverse_bound_finite = false;
    double q = 0.0;              // sampled Lipschitz constant of u -> L^-1(u)
    double Q = 0.0;              // q * |f|
    double R = 0.0;              // ball radius the samples were drawn from
    double S_radius = 0.0;       // invariant-ball radius from the first step
    double first_step_norm = 0.0;
    double f_norm = 0.0;
    double u0_norm = 0.0;
    int sample_count = 0;
    int t_sample_count = 0;
    int pair_count = 0;
    std::uint64_t seed = kDefaultSeed;
    NormKind norm_kind = NormKind::DiscreteL2;
    bool invertibility_holds = false;  // ps < 1
    bool contraction_holds = false;    // Q < 1 and S_radius <= R
    std::string s_method;              // "dense-power-iteration" | "probe-lower-bound" | "row-sum-exact"
    std::string q_method;
};

struct CertifyOptions {
    int samples = 16;      // ball samples for the derivative-deviation estimate
    int t_samples = 5;     // segment parameters per sample, {0, ..., 1}
    int pairs = 10;        // state pairs for the Lipschitz estimate
    int probes = 20;       // probe vectors when the dense path is unavailable
    int norm_iterations = 150;
    int dense_limit = 512;  // dense-exact path up to this dimension
    std::uint64_t seed = kDefaultSeed;
    QuadratureRule rule;    // empty -> Gauss-Legendre 8
    SolveOptions solve;
};

/// |[A'(0)]^-1| via estimate_inverse_norm of the assembled base derivative.
/// Throws SingularOperatorError when A'(0) is singular.
double estimate_base_inverse_norm(const ProblemDefinition& problem, const SolveOptions& opts = {});

/// Sampled sup of |A'(tu) - A'(0)| over n_samples states with |u| <= R
/// (Gaussian directions normalized in the problem norm; radii stratified
/// over {R/4, R/2, 3R/4, R} with the last sample pinned to R) and n_t
/// segment parameters t in {0, ..., 1}. Deterministic for a fixed seed.
double estimate_derivative_deviation(const ProblemDefinition& problem, double R, int n_samples,
                                     int n_t, const CertifyOptions& opts = {});

struct InvertibilityBound {
    double p = 0.0;
    double s = 0.0;
    double ps = 0.0;
    double bound = 0.0;  // p / (1 - ps) when it holds, +inf otherwise
    bool holds = false;  // ps < 1
};

/// Neumann-series invertibility verdict from the two constants.
InvertibilityBound certify_invertibility(double p, double s);

/// Sampled Lipschitz constant of u -> L^-1(u) over pairs in the ball of
/// radius R, through the resolvent identity
///   L^-1(u) - L^-1(v) = L^-1(u) (L(v) - L(u)) L^-1(v).
/// Dense-exact operator norms up to opts.dense_limit, probe lower bounds
/// above. Pairs closer than 1e-13 (1+R) are redrawn.
double estimate_inverse_lipschitz(const ProblemDefinition& problem, double R, int n_pairs,
                                  const QuadratureRule& rule, const CertifyOptions& opts = {});

/// Derivative-route cross-check of the Lipschitz constant:
/// max over samples of |L^-1(u) dL(u)[d] L^-1(u)| / |d| with dL by central
/// differences. Used to corroborate estimate_inverse_lipschitz, not to
/// replace it.
double lipschitz_from_derivative(const ProblemDefinition& problem, double R, int n_samples,
                                 const QuadratureRule& rule, const CertifyOptions& opts = {});

/// Contraction verdict: Q = q |f| and the invariant-ball radius from the
/// first step w_1 = L0^-1 f. Holds when Q < 1 and the ball fits inside B_R.
/// Fills the contraction fields of the certificate; the invertibility fields
/// are merged by certify_problem.
Certificate certify_convergence(double q, const StateVector& f, const StateVector& u0,
                                const LinearOperatorHandle& L0, double R,
                                const SolveOptions& opts = {});

/// Full pipeline: p, s, invertibility, q, contraction. u0 defaults to f.
Certificate certify_problem(const ProblemDefinition& problem, const StateVector& f,
                            const StateVector& u0, double R, const CertifyOptions& opts = {});

/// Deterministic states in the ball |u| <= R of the problem's space:
/// Gaussian directions normalized in the problem norm, stratified radii,
/// last sample at radius R.
std::vector<StateVector> sample_ball(const ProblemDefinition& problem, double R, int count,
                                     std::uint64_t seed);

}  // namespace glin
