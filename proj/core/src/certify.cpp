#include "glin/certify.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <random>

#include "glin/errors.hpp"
#include "glin/linearize.hpp"

namespace glin {

namespace {

QuadratureRule effective_rule(const CertifyOptions& opts) {
    return opts.rule.size() > 0 ? opts.rule : gauss_legendre(8);
}

Eigen::VectorXd gaussian_vector(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) {
        v[i] = gauss(rng);
    }
    return v;
}

StateVector draw_in_ball(const ProblemDefinition& problem, double radius, std::mt19937_64& rng) {
    const int n = problem.mesh()->size();
    if (radius == 0.0) {
        return problem.zero_state();
    }
    for (int attempt = 0; attempt < 64; ++attempt) {
        Eigen::VectorXd v = gaussian_vector(n, rng);
        const StateVector candidate = problem.make_state(std::move(v));
        const double nrm = candidate.norm();
        if (nrm > 0.0) {
            return candidate.with_values(candidate.values() * (radius / nrm));
        }
    }
    throw Error("ball sampler failed to draw a nonzero direction");
}

constexpr double kRadiusFractions[4] = {0.25, 0.5, 0.75, 1.0};

// Largest |D z| / |z| over deterministic probes, in the operator's norm
// convention; a lower bound of the operator norm.
double probe_norm_lower_bound(const LinearOperatorHandle& D, const Mesh& mesh, int probes,
                              std::mt19937_64& rng) {
    double best = 0.0;
    for (int p = 0; p < probes; ++p) {
        const Eigen::VectorXd z = gaussian_vector(D.dim(), rng);
        const double zn = norm_of(z, mesh, D.norm_kind());
        if (zn == 0.0) continue;
        best = std::max(best, norm_of(D.apply(z), mesh, D.norm_kind()) / zn);
    }
    return best;
}

}  // namespace

std::vector<StateVector> sample_ball(const ProblemDefinition& problem, double R, int count,
                                     std::uint64_t seed) {
    if (count < 1) {
        throw InvalidArgumentError("sample_ball: count must be >= 1");
    }
    if (R < 0.0) {
        throw InvalidArgumentError("sample_ball: negative radius");
    }
    std::mt19937_64 rng(seed);
    std::vector<StateVector> samples;
    samples.reserve(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) {
        // stratified radii; the last sample sits exactly on the sphere |u| = R
        const double frac = (k == count - 1) ? 1.0 : kRadiusFractions[k % 4];
        samples.push_back(draw_in_ball(problem, frac * R, rng));
    }
    return samples;
}

double estimate_base_inverse_norm(const ProblemDefinition& problem, const SolveOptions& opts) {
    const StateVector zero = problem.zero_state();
    LinearOperatorHandle L0 = problem.has_dense_derivative()
                                  ? [&] {
                                        auto handle = LinearOperatorHandle::from_dense(
                                            problem.dense_derivative(zero.values()),
                                            problem.norm_kind());
                                        handle.set_symmetric(problem.derivative_symmetric());
                                        return handle;
                                    }()
                                  : linearize_by_quadrature(problem, zero, gauss_legendre(1));
    return estimate_inverse_norm(L0, opts);
}

double estimate_derivative_deviation(const ProblemDefinition& problem, double R, int n_samples,
                                     int n_t, const CertifyOptions& opts) {
    if (n_samples < 1 || n_t < 2) {
        throw InvalidArgumentError("derivative deviation needs n_samples >= 1 and n_t >= 2");
    }
    const int n = problem.mesh()->size();
    const bool dense_path = problem.has_dense_derivative() && n <= opts.dense_limit;
    const std::vector<StateVector> samples = sample_ball(problem, R, n_samples, opts.seed);
    std::mt19937_64 probe_rng(opts.seed ^ 0x9E3779B97F4A7C15ull);

    Eigen::MatrixXd base_dense;
    if (dense_path) {
        base_dense = problem.dense_derivative(Eigen::VectorXd::Zero(n));
    }

    double worst = 0.0;
    for (const StateVector& u : samples) {
        for (int j = 0; j < n_t; ++j) {
            const double t = static_cast<double>(j) / static_cast<double>(n_t - 1);
            if (t == 0.0) continue;  // A'(0) - A'(0) contributes nothing
            const Eigen::VectorXd ut = t * u.values();
            if (dense_path) {
                LinearOperatorHandle D = LinearOperatorHandle::from_dense(
                    problem.dense_derivative(ut) - base_dense, problem.norm_kind());
                worst = std::max(worst, estimate_operator_norm(D, opts.norm_iterations));
            } else {
                auto prob = std::make_shared<const ProblemDefinition>(problem);
                auto ut_shared = std::make_shared<const Eigen::VectorXd>(ut);
                LinearOperatorHandle D(
                    n,
                    [prob, ut_shared, n](const Eigen::VectorXd& w) -> Eigen::VectorXd {
                        const StateVector ws = prob->make_state(w);
                        return prob->apply_derivative(prob->make_state(*ut_shared), ws).values() -
                               prob->apply_derivative(prob->zero_state(), ws).values();
                    },
                    problem.norm_kind());
                worst = std::max(worst,
                                 probe_norm_lower_bound(D, *problem.mesh(), opts.probes, probe_rng));
            }
        }
    }
    return worst;
}

InvertibilityBound certify_invertibility(double p, double s) {
    if (p < 0.0 || s < 0.0) {
        throw InvalidArgumentError("certify_invertibility: constants must be nonnegative");
    }
    InvertibilityBound out;
    out.p = p;
    out.s = s;
    out.ps = p * s;
    out.holds = out.ps < 1.0;
    out.bound = out.holds ? p / (1.0 - out.ps) : std::numeric_limits<double>::infinity();
    return out;
}

double estimate_inverse_lipschitz(const ProblemDefinition& problem, double R, int n_pairs,
                                  const QuadratureRule& rule, const CertifyOptions& opts) {
    if (n_pairs < 1) {
        throw InvalidArgumentError("lipschitz estimate needs n_pairs >= 1");
    }
    const int n = problem.mesh()->size();
    const bool dense_path = problem.has_dense_derivative() && n <= opts.dense_limit;
    std::mt19937_64 rng(opts.seed);
    std::mt19937_64 probe_rng(opts.seed ^ 0xD1B54A32D192ED03ull);

    double q = 0.0;
    int drawn = 0;
    for (int pair = 0; pair < n_pairs; ++pair) {
        StateVector u = problem.zero_state();
        StateVector v = problem.zero_state();
        double distance = 0.0;
        do {  // degenerate pairs are redrawn
            const double fu = kRadiusFractions[(drawn++) % 4];
            const double fv = kRadiusFractions[(drawn++) % 4];
            u = draw_in_ball(problem, fu * R, rng);
            v = draw_in_ball(problem, fv * R, rng);
            distance = u.with_values(u.values() - v.values()).norm();
        } while (distance <= 1e-13 * (1.0 + R));

        const LinearOperatorHandle Lu = linearize_by_quadrature(problem, u, rule);
        const LinearOperatorHandle Lv = linearize_by_quadrature(problem, v, rule);

        double diff_norm = 0.0;
        if (dense_path) {
            // Resolvent identity assembled densely:
            //   L^-1(u) - L^-1(v) = L^-1(u) (L(v) - L(u)) L^-1(v)
            Eigen::PartialPivLU<Eigen::MatrixXd> lu_u(Lu.dense());
            Eigen::PartialPivLU<Eigen::MatrixXd> lu_v(Lv.dense());
            const Eigen::MatrixXd mid = Lv.dense() - Lu.dense();
            const Eigen::MatrixXd D =
                lu_u.solve(mid * lu_v.solve(Eigen::MatrixXd::Identity(n, n)));
            if (!D.allFinite()) {
                throw SingularOperatorError("lipschitz estimate hit a singular linearization");
            }
            if (problem.norm_kind() == NormKind::Sup) {
                diff_norm = D.cwiseAbs().rowwise().sum().maxCoeff();
            } else {
                diff_norm = estimate_operator_norm(
                    LinearOperatorHandle::from_dense(D, problem.norm_kind()),
                    opts.norm_iterations);
            }
        } else {
            for (int p = 0; p < opts.probes; ++p) {
                const Eigen::VectorXd z = gaussian_vector(n, probe_rng);
                const StateVector zs = problem.make_state(z);
                const double zn = zs.norm();
                if (zn == 0.0) continue;
                const StateVector t1 = solve(Lv, zs, opts.solve);
                const StateVector t2 = t1.with_values(zs.values() - Lu.apply(t1.values()));
                const StateVector t3 = solve(Lu, t2, opts.solve);
                diff_norm = std::max(diff_norm, t3.norm() / zn);
            }
        }
        q = std::max(q, diff_norm / distance);
    }
    return q;
}

double lipschitz_from_derivative(const ProblemDefinition& problem, double R, int n_samples,
                                 const QuadratureRule& rule, const CertifyOptions& opts) {
    if (n_samples < 1) {
        throw InvalidArgumentError("lipschitz cross-check needs n_samples >= 1");
    }
    const int n = problem.mesh()->size();
    if (!problem.has_dense_derivative() || n > opts.dense_limit) {
        throw UnsupportedOperationError("lipschitz cross-check is a dense-path diagnostic");
    }
    std::mt19937_64 rng(opts.seed ^ 0xA24BAED4963EE407ull);
    const std::vector<StateVector> samples = sample_ball(problem, R, n_samples, opts.seed);

    double q = 0.0;
    for (const StateVector& u : samples) {
        StateVector dir = draw_in_ball(problem, 1.0, rng);
        const double step = 1e-6 * (1.0 + u.norm());
        const LinearOperatorHandle L_plus = linearize_by_quadrature(
            problem, u.with_values(u.values() + step * dir.values()), rule);
        const LinearOperatorHandle L_minus = linearize_by_quadrature(
            problem, u.with_values(u.values() - step * dir.values()), rule);
        const Eigen::MatrixXd dL = (L_plus.dense() - L_minus.dense()) / (2.0 * step);

        const LinearOperatorHandle Lu = linearize_by_quadrature(problem, u, rule);
        Eigen::PartialPivLU<Eigen::MatrixXd> lu(Lu.dense());
        const Eigen::MatrixXd D = lu.solve(dL * lu.solve(Eigen::MatrixXd::Identity(n, n)));
        double diff_norm = 0.0;
        if (problem.norm_kind() == NormKind::Sup) {
            diff_norm = D.cwiseAbs().rowwise().sum().maxCoeff();
        } else {
            diff_norm = estimate_operator_norm(
                LinearOperatorHandle::from_dense(D, problem.norm_kind()), opts.norm_iterations);
        }
        q = std::max(q, diff_norm);  // direction has unit problem norm
    }
    return q;
}

Certificate certify_convergence(double q, const StateVector& f, const StateVector& u0,
                                const LinearOperatorHandle& L0, double R,
                                const SolveOptions& opts) {
    require_compatible(f, u0);
    if (!std::isfinite(q) || q < 0.0) {
        throw InvalidArgumentError("certify_convergence: invalid lipschitz constant");
    }
    Certificate cert;
    cert.q = q;
    cert.f_norm = f.norm();
    cert.u0_norm = u0.norm();
    cert.R = R;
    cert.Q = q * cert.f_norm;
    cert.norm_kind = f.norm_kind();

    const StateVector w1 = solve(L0, f, opts);
    cert.first_step_norm = w1.with_values(w1.values() - u0.values()).norm();
    cert.S_radius = (cert.Q < 1.0)
                        ? cert.u0_norm + cert.first_step_norm / (1.0 - cert.Q)
                        : std::numeric_limits<double>::infinity();
    cert.contraction_holds = cert.Q < 1.0 && cert.S_radius <= R;
    return cert;
}

Certificate certify_problem(const ProblemDefinition& problem, const StateVector& f,
                            const StateVector& u0, double R, const CertifyOptions& opts) {
    const QuadratureRule rule = effective_rule(opts);
    const double p = estimate_base_inverse_norm(problem, opts.solve);
    const double s = estimate_derivative_deviation(problem, R, opts.samples, opts.t_samples, opts);
    const InvertibilityBound inv = certify_invertibility(p, s);
    const double q = estimate_inverse_lipschitz(problem, R, opts.pairs, rule, opts);

    const LinearOperatorHandle L0 = linearize_by_quadrature(problem, u0, rule);
    Certificate cert = certify_convergence(q, f, u0, L0, R, opts.solve);
    cert.p = inv.p;
    cert.s = inv.s;
    cert.ps = inv.ps;
    cert.inverse_bound = inv.bound;
    cert.inverse_bound_finite = inv.holds;
    cert.invertibility_holds = inv.holds;
    cert.sample_count = opts.samples;
    cert.t_sample_count = opts.t_samples;
    cert.pair_count = opts.pairs;
    cert.seed = opts.seed;

    const bool dense_path =
        problem.has_dense_derivative() && problem.mesh()->size() <= opts.dense_limit;
    const char* dense_tag =
        problem.norm_kind() == NormKind::Sup ? "row-sum-exact" : "dense-power-iteration";
    cert.s_method = dense_path ? dense_tag : "probe-lower-bound";
    cert.q_method = dense_path ? dense_tag : "probe-lower-bound";
    return cert;
}

}  // namespace glin
