#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "glin/glin.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace glin;

namespace {

ProblemDefinition cubic_reaction_elliptic(int n, double a, double eps) {
    EllipticProblemSpec spec;
    spec.g = [a, eps](double, double, double u) { return a * u + eps * u * u * u; };
    spec.g_u = [a, eps](double, double, double u) { return a + 3.0 * eps * u * u; };
    spec.n = n;
    spec.reaction_floor = a;
    return make_elliptic_problem(spec);
}

}  // namespace

TEST_CASE("base inverse norm: scalar linear and the elliptic eigenvalue") {
    auto linear = make_linear_problem(2.0 * Eigen::MatrixXd::Identity(4, 4), NormKind::Sup);
    CHECK(estimate_base_inverse_norm(linear) == doctest::Approx(0.5).epsilon(1e-6));

    const int n = 32;
    auto problem = cubic_reaction_elliptic(n, 1.0, 1.0);
    const double p = estimate_base_inverse_norm(problem);
    const double expected = 1.0 / (oracle::laplacian_eigenvalue_1d(1, n) + 1.0);
    CHECK(testing::rel_error(p, expected) <= 1e-3);
    CHECK(p < 1.0);
}

TEST_CASE("base inverse norm: identity base derivative") {
    // kernel slope zero at the origin: the base derivative is the identity
    IntegralProblemSpec spec;
    spec.kernel = [](double x, double y) { return 1.0 + x * y; };
    spec.g = [](double u) { return u * u; };  // g'(0) = 0
    spec.g_prime = [](double u) { return 2.0 * u; };
    spec.n = 17;
    auto problem = make_integral_problem(spec);
    CHECK(estimate_base_inverse_norm(problem) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("singular base derivative raises") {
    DiagonalProblemSpec spec;
    spec.g = [](double u) { return u * u * u; };
    spec.g_prime = [](double u) { return 3.0 * u * u; };
    auto problem = make_diagonal_problem(spec);
    CHECK_THROWS_AS(estimate_base_inverse_norm(problem), SingularOperatorError);
}

TEST_CASE("derivative deviation: linear problems and the zero radius") {
    auto linear = make_linear_problem(3.0 * Eigen::MatrixXd::Identity(5, 5), NormKind::Sup);
    CHECK(estimate_derivative_deviation(linear, 2.0, 8, 3) == 0.0);
    auto problem = cubic_reaction_elliptic(16, 1.0, 1.0);
    CHECK(estimate_derivative_deviation(problem, 0.0, 4, 3) == 0.0);
}

TEST_CASE("derivative deviation matches the diagonal multiplication operator") {
    // A'(u) - A'(0) = diag(3 eps u_i^2): spectral norm = 3 eps max_i u_i^2
    const double eps = 0.7;
    auto problem = cubic_reaction_elliptic(24, 1.0, eps);
    const double R = 1.5;
    const int samples = 8;
    CertifyOptions opts;
    const double s = estimate_derivative_deviation(problem, R, samples, 4, opts);

    double expected = 0.0;
    for (const auto& u : sample_ball(problem, R, samples, opts.seed)) {
        expected = std::max(expected, 3.0 * eps * u.values().cwiseAbs().maxCoeff() *
                                          u.values().cwiseAbs().maxCoeff());
    }
    CHECK(testing::rel_error(s, expected) <= 1e-3);
}

TEST_CASE("derivative deviation is nondecreasing in the radius") {
    auto problem = cubic_reaction_elliptic(20, 1.0, 0.5);
    CertifyOptions opts;
    const double s_half = estimate_derivative_deviation(problem, 0.5, 8, 4, opts);
    const double s_one = estimate_derivative_deviation(problem, 1.0, 8, 4, opts);
    const double s_two = estimate_derivative_deviation(problem, 2.0, 8, 4, opts);
    CHECK(s_half <= s_one + 1e-12);
    CHECK(s_one <= s_two + 1e-12);
}

TEST_CASE("invertibility bound arithmetic") {
    const InvertibilityBound ok = certify_invertibility(1.0, 0.5);
    CHECK(ok.holds);
    CHECK(ok.bound == doctest::Approx(2.0));
    CHECK(ok.ps == doctest::Approx(0.5));

    const InvertibilityBound boundary = certify_invertibility(1.0, 1.0);
    CHECK_FALSE(boundary.holds);
    CHECK(std::isinf(boundary.bound));

    const InvertibilityBound small = certify_invertibility(0.2, 1.0);
    CHECK(small.holds);
    CHECK(small.bound == doctest::Approx(0.25));

    CHECK_THROWS_AS(certify_invertibility(-1.0, 0.5), InvalidArgumentError);
}

TEST_CASE("neumann-series dominance: fresh samples respect the bound") {
    auto problem = cubic_reaction_elliptic(24, 1.0, 0.4);
    const double R = 1.0;
    CertifyOptions opts;
    const double p = estimate_base_inverse_norm(problem, opts.solve);
    const double s = estimate_derivative_deviation(problem, R, 12, 5, opts);
    const InvertibilityBound inv = certify_invertibility(p, s);
    REQUIRE(inv.holds);

    CertifyOptions fresh;
    fresh.seed = 0xFEEDFACE;  // a different stream than the certification draw
    const QuadratureRule rule = gauss_legendre(8);
    for (const auto& u : sample_ball(problem, R, 10, fresh.seed)) {
        const auto L = linearize_by_quadrature(problem, u, rule);
        CHECK(estimate_inverse_norm(L) <= inv.bound * 1.001);
    }
}

TEST_CASE("lipschitz estimate: linear problems give zero") {
    auto linear = make_linear_problem(2.0 * Eigen::MatrixXd::Identity(6, 6), NormKind::Sup);
    const double q = estimate_inverse_lipschitz(linear, 1.0, 4, gauss_legendre(2));
    CHECK(q <= 1e-13);
}

TEST_CASE("lipschitz estimate respects the analytic reaction bound") {
    // g = a u + eps u^3: |(g(u)/u)'| = 2 eps |u| <= 2 eps U on the sampled range
    const double a = 1.0;
    const double eps = 0.3;
    auto problem = cubic_reaction_elliptic(32, a, eps);
    const double R = 1.0;
    CertifyOptions opts;
    opts.pairs = 10;
    const double q = estimate_inverse_lipschitz(problem, R, opts.pairs, gauss_legendre(8), opts);
    CHECK(q > 0.0);

    // pointwise amplitude of the sampled ball states bounds the secant slope
    double U = 0.0;
    for (const auto& u : sample_ball(problem, R, 2 * opts.pairs + 8, opts.seed)) {
        U = std::max(U, u.values().cwiseAbs().maxCoeff());
    }
    const double c_g = 2.0 * eps * U;
    CHECK(q <= c_g / (a * a) + 1e-6);
}

TEST_CASE("derivative-route cross-check corroborates the pairwise estimate") {
    auto problem = cubic_reaction_elliptic(24, 1.0, 0.5);
    const double R = 1.0;
    CertifyOptions opts;
    const double q_pairs = estimate_inverse_lipschitz(problem, R, 10, gauss_legendre(8), opts);
    const double q_deriv = lipschitz_from_derivative(problem, R, 5, gauss_legendre(8), opts);
    CHECK(q_pairs > 0.0);
    CHECK(q_deriv > 0.0);
    // both sample the same modulus; agreement within an order of magnitude
    CHECK(std::abs(std::log10(q_deriv / q_pairs)) <= 1.0);
}

TEST_CASE("contraction verdicts") {
    auto mesh = Mesh::interval(0.0, 1.0, 3);
    auto I = LinearOperatorHandle::identity(3, NormKind::Sup);
    const StateVector f(mesh, (Eigen::VectorXd(3) << 1.0, 0.0, 0.0).finished(), NormKind::Sup);
    const StateVector u0 = StateVector::zero(mesh, NormKind::Sup);

    // q = 0: S has radius |w1| = 1; holds whenever it fits in B_R
    const Certificate trivial = certify_convergence(0.0, f, u0, I, 2.0);
    CHECK(trivial.Q == 0.0);
    CHECK(trivial.S_radius == doctest::Approx(1.0));
    CHECK(trivial.contraction_holds);

    const Certificate too_small = certify_convergence(0.0, f, u0, I, 0.5);
    CHECK_FALSE(too_small.contraction_holds);

    // Q >= 1 never holds, whatever the ball radius
    const Certificate bad = certify_convergence(1.2, f, u0, I, 100.0);
    CHECK(bad.Q >= 1.0);
    CHECK_FALSE(bad.contraction_holds);
    CHECK(std::isinf(bad.S_radius));
}

TEST_CASE("full pipeline on a mild manufactured instance") {
    auto problem = cubic_reaction_elliptic(32, 1.0, 0.1);
    const auto& x = problem.mesh()->axis(0).coordinates;
    Eigen::VectorXd exact(32);
    for (int i = 0; i < 32; ++i) {
        exact[i] = 0.5 * std::sin(std::numbers::pi * x[static_cast<std::size_t>(i)]);
    }
    const StateVector u_exact = problem.make_state(exact);
    const StateVector f = manufacture_rhs(problem, u_exact);

    CertifyOptions opts;
    opts.samples = 8;
    opts.pairs = 6;
    const double R = 1.0;
    // zero start: the invariant ball then has radius about |L^-1(0) f|
    const Certificate cert = certify_problem(problem, f, problem.zero_state(), R, opts);

    CHECK(cert.invertibility_holds);
    CHECK(cert.ps == doctest::Approx(cert.p * cert.s).epsilon(1e-15));
    CHECK(cert.contraction_holds);
    CHECK(cert.Q < 1.0);
    CHECK(cert.norm_kind == NormKind::DiscreteL2);
    CHECK(cert.q_method == "dense-power-iteration");

    // when the contraction verdict holds, the run contracts at least that fast
    const IterationReport report = run_fixed_point(problem, f, problem.zero_state(), {});
    REQUIRE(report.converged());
    if (report.step_norms.size() >= 3) {
        CHECK(empirical_contraction(report) <= cert.Q + 0.1);
    }
}

TEST_CASE("sample_ball is deterministic and stratified") {
    auto problem = cubic_reaction_elliptic(16, 1.0, 0.2);
    const auto a = sample_ball(problem, 2.0, 9, 0x5EED);
    const auto b = sample_ball(problem, 2.0, 9, 0x5EED);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].values() == b[i].values());
    }
    // stratified radii cycle through R/4, R/2, 3R/4, R; the last sits at R
    CHECK(a[0].norm() == doctest::Approx(0.5));
    CHECK(a[1].norm() == doctest::Approx(1.0));
    CHECK(a[2].norm() == doctest::Approx(1.5));
    CHECK(a[3].norm() == doctest::Approx(2.0));
    CHECK(a.back().norm() == doctest::Approx(2.0));
}
