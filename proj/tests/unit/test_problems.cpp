#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "glin/glin.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace glin;

TEST_CASE("integral family: degenerate kernel reduces to the identity") {
    IntegralProblemSpec spec;
    spec.kernel = [](double, double) { return 0.0; };
    spec.g = [](double u) { return u; };
    spec.g_prime = [](double) { return 1.0; };
    spec.n = 9;
    auto problem = make_integral_problem(spec);
    const StateVector f = testing::random_state(problem, 4);
    const IterationReport report = run_fixed_point(problem, f, problem.zero_state(), {});
    CHECK(report.converged());
    CHECK(report.iterations() == 1);
    CHECK((report.final_state->values() - f.values()).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("integral family: rank-one kernel against the Sherman-Morrison oracle") {
    IntegralProblemSpec spec;
    spec.kernel = [](double x, double y) { return x * y; };
    spec.g = [](double u) { return u; };
    spec.g_prime = [](double) { return 1.0; };
    spec.n = 41;
    auto problem = make_integral_problem(spec);

    const auto& x = problem.mesh()->axis(0).coordinates;
    const double h = problem.mesh()->axis(0).spacing;
    const int n = spec.n;

    // A = I + x v^T with v_j = w_j x_j (trapezoid weights)
    Eigen::VectorXd xv(n), v(n);
    for (int i = 0; i < n; ++i) {
        xv[i] = x[static_cast<std::size_t>(i)];
        const double wj = (i == 0 || i == n - 1) ? 0.5 * h : h;
        v[i] = wj * x[static_cast<std::size_t>(i)];
    }
    const StateVector f = problem.make_state(Eigen::VectorXd::Ones(n));
    const IterationReport report = run_fixed_point(problem, f, f, {});
    REQUIRE(report.converged());
    const Eigen::VectorXd expected = oracle::rank_one_solve(xv, v, f.values());
    CHECK((report.final_state->values() - expected).cwiseAbs().maxCoeff() <= 1e-10);

    // the closed-form linearization of a linear problem is the operator itself
    auto Lc = linearize_closed_form(problem, testing::random_state(problem, 8));
    CHECK((Lc.apply(f.values()) - problem.evaluate(f).values()).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("integral family: cubic nonlinearity is exactly factorizable") {
    IntegralProblemSpec spec;
    spec.kernel = [](double x, double y) { return std::min(x, y); };
    spec.g = [](double u) { return u * u * u; };
    spec.g_prime = [](double u) { return 3.0 * u * u; };
    spec.n = 33;
    spec.symmetric_kernel = true;
    auto problem = make_integral_problem(spec);
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const StateVector u = testing::random_state(problem, seed);
        CHECK(factorization_residual(problem, u, gauss_legendre(2)) <= 1e-12);
    }
}

TEST_CASE("integral family: uniqueness echo for a positive semidefinite kernel") {
    // k = min(x,y) is SPSD; g' >= 0.75 > 0 keeps the inner-product argument alive
    IntegralProblemSpec spec;
    spec.kernel = [](double x, double y) { return std::min(x, y); };
    spec.g = [](double u) { return u + 0.25 * std::sin(u); };
    spec.g_prime = [](double u) { return 1.0 + 0.25 * std::cos(u); };
    spec.n = 25;
    spec.symmetric_kernel = true;
    auto problem = make_integral_problem(spec);

    const auto& x = problem.mesh()->axis(0).coordinates;
    Eigen::VectorXd fv(spec.n);
    for (int i = 0; i < spec.n; ++i) {
        fv[i] = 0.4 * std::sin(std::numbers::pi * x[static_cast<std::size_t>(i)]) + 0.1;
    }
    const StateVector f = problem.make_state(fv);
    std::vector<StateVector> starts;
    starts.push_back(problem.zero_state());
    starts.push_back(f);
    for (std::uint64_t seed = 60; seed < 63; ++seed) {
        starts.push_back(testing::random_state(problem, seed, 0.4));
    }
    CHECK(uniqueness_probe(problem, f, starts) <= 1e-8);
}

TEST_CASE("integral family: invalid specs are rejected") {
    IntegralProblemSpec bad;
    bad.kernel = [](double, double) { return 1.0; };
    bad.g = [](double u) { return u + 1.0; };  // g(0) != 0
    bad.g_prime = [](double) { return 1.0; };
    CHECK_THROWS_AS(make_integral_problem(bad), InvalidSpecError);

    IntegralProblemSpec asym;
    asym.kernel = [](double x, double y) { return x - y; };
    asym.g = [](double u) { return u; };
    asym.g_prime = [](double) { return 1.0; };
    asym.symmetric_kernel = true;
    CHECK_THROWS_AS(make_integral_problem(asym), InvalidSpecError);
}

TEST_CASE("elliptic family: linear reaction keeps the inverse bound") {
    for (double a : {0.5, 1.0, 2.0}) {
        EllipticProblemSpec spec;
        spec.g = [a](double, double, double u) { return a * u; };
        spec.g_u = [a](double, double, double) { return a; };
        spec.n = 24;
        spec.reaction_floor = a;
        auto problem = make_elliptic_problem(spec);
        for (std::uint64_t seed = 1; seed <= 3; ++seed) {
            const StateVector u = testing::random_state(problem, seed);
            auto L = linearize_closed_form(problem, u);
            CHECK(estimate_inverse_norm(L) <= 1.0 / a + 1e-6);
        }
    }
}

TEST_CASE("elliptic family: manufactured solution converges at second order") {
    const double pi = std::numbers::pi;
    auto continuum_f = [pi](double x) {
        const double u = 0.5 * std::sin(pi * x);
        return pi * pi * u + (u + 0.1 * u * u * u);
    };
    std::vector<double> errors, spacings;
    for (int n : {16, 32, 64}) {
        EllipticProblemSpec spec;
        spec.g = [](double, double, double u) { return u + 0.1 * u * u * u; };
        spec.g_u = [](double, double, double u) { return 1.0 + 0.3 * u * u; };
        spec.n = n;
        spec.reaction_floor = 1.0;
        auto problem = make_elliptic_problem(spec);
        const auto& x = problem.mesh()->axis(0).coordinates;
        Eigen::VectorXd fv(n), exact(n);
        for (int i = 0; i < n; ++i) {
            fv[i] = continuum_f(x[static_cast<std::size_t>(i)]);
            exact[i] = 0.5 * std::sin(pi * x[static_cast<std::size_t>(i)]);
        }
        const StateVector f = problem.make_state(fv);
        const IterationReport report = run_fixed_point(problem, f, f, {});
        REQUIRE(report.converged());
        errors.push_back((report.final_state->values() - exact).cwiseAbs().maxCoeff());
        spacings.push_back(problem.mesh()->axis(0).spacing);
    }
    for (std::size_t k = 1; k < errors.size(); ++k) {
        const double order =
            std::log(errors[k - 1] / errors[k]) / std::log(spacings[k - 1] / spacings[k]);
        CHECK(order >= 1.8);
        CHECK(order <= 2.2);
    }
}

TEST_CASE("elliptic family: 2D linear case against the eigen-expansion oracle") {
    const int n = 16;
    const double a = 1.0;
    EllipticProblemSpec spec;
    spec.g = [a](double, double, double u) { return a * u; };
    spec.g_u = [a](double, double, double) { return a; };
    spec.dimension = 2;
    spec.n = n;
    spec.reaction_floor = a;
    auto problem = make_elliptic_problem(spec);
    REQUIRE(problem.mesh()->size() == n * n);

    const StateVector f = testing::random_state(problem, 13);
    const IterationReport report = run_fixed_point(problem, f, f, {});
    REQUIRE(report.converged());
    REQUIRE(report.iterations() == 1);  // linear: one solve

    const Eigen::VectorXd expected = oracle::poisson_solve_2d(f.values(), n, n, a);
    CHECK((report.final_state->values() - expected).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("elliptic family: declared split is validated") {
    EllipticProblemSpec spec;
    spec.g = [](double, double, double u) { return -u; };  // g/u = -1 < 0
    spec.g_u = [](double, double, double) { return -1.0; };
    spec.n = 8;
    spec.reaction_floor = 0.5;
    CHECK_THROWS_AS(make_elliptic_problem(spec), InvalidSpecError);
}

namespace {

ParabolicProblemSpec heat_spec(double a_const, int nx, int nt, double t_final) {
    ParabolicProblemSpec spec;
    spec.a = [a_const](double) { return a_const; };
    spec.a_prime = [](double) { return 0.0; };
    spec.a_second = [](double) { return 0.0; };
    spec.gamma = [a_const](double u) { return a_const * u; };
    spec.bound_lower = a_const;
    spec.bound_upper = a_const;
    spec.t_final = t_final;
    spec.n_space = nx;
    spec.n_time = nt;
    return spec;
}

}  // namespace

TEST_CASE("parabolic family: constant diffusivity reproduces the heat solution") {
    const int nx = 32, nt = 32;
    const double T = 0.1;
    auto problem = make_parabolic_problem(heat_spec(1.0, nx, nt, T));

    const StateVector F = parabolic_rhs(
        problem, [](double x) { return std::sin(std::numbers::pi * x); },
        [](double, double) { return 0.0; });

    const IterationReport report = run_fixed_point(problem, F, F, {});
    REQUIRE(report.converged());
    CHECK(report.iterations() == 1);  // linear problem

    const auto& x = problem.mesh()->axis(0).coordinates;
    const auto& t = problem.mesh()->axis(1).coordinates;
    const double h = problem.mesh()->axis(0).spacing;
    const double dt = problem.mesh()->axis(1).spacing;
    Eigen::VectorXd exact(problem.mesh()->size());
    for (int m = 0; m < nt; ++m) {
        for (int i = 0; i < nx; ++i) {
            exact[m * nx + i] = oracle::heat_solution(x[static_cast<std::size_t>(i)],
                                                      t[static_cast<std::size_t>(m)], 1.0);
        }
    }
    const StateVector exact_state = problem.make_state(exact);
    const double err = exact_state
                           .with_values(report.final_state->values() - exact)
                           .norm();
    CHECK(err <= 5.0 * (h * h + dt * dt) * exact_state.norm());
}

TEST_CASE("parabolic family: constant diffusivity makes the linearization state-free") {
    auto problem = make_parabolic_problem(heat_spec(2.0, 8, 6, 0.2));
    const StateVector u1 = testing::random_state(problem, 3, 0.5);
    const StateVector u2 = testing::random_state(problem, 4, 1.5);
    auto L1 = linearize_closed_form(problem, u1);
    auto L2 = linearize_closed_form(problem, u2);
    for (std::uint64_t seed = 70; seed < 73; ++seed) {
        const Eigen::VectorXd w = testing::random_vector(problem.mesh()->size(), seed);
        CHECK((L1.apply(w) - L2.apply(w)).cwiseAbs().maxCoeff() <=
              1e-13 * (1.0 + L1.apply(w).cwiseAbs().maxCoeff()));
    }
}

TEST_CASE("parabolic family: affine diffusivity coefficients at the zero state") {
    ParabolicProblemSpec spec;
    spec.a = [](double u) { return 1.0 + u; };
    spec.a_prime = [](double) { return 1.0; };
    spec.a_second = [](double) { return 0.0; };
    spec.gamma = [](double u) { return u + 0.5 * u * u; };
    spec.bound_lower = 0.25;  // on the checked range |u| <= 0.5
    spec.bound_upper = 1.6;
    spec.check_range = 0.5;
    spec.t_final = 0.2;
    spec.n_space = 6;
    spec.n_time = 5;
    auto problem = make_parabolic_problem(spec);

    // at u = 0 the ratio limits give mean a(0) = 1 and first moment a'(0)/2
    const auto coef = RatioCoefficient::diffusion(spec.a, spec.a_prime, spec.a_second,
                                                  *spec.gamma);
    const DiffusionRatios r = diffusion_ratios(coef, 0.0);
    CHECK(r.flux == doctest::Approx(1.0));
    CHECK(r.laplace_weight == doctest::Approx(0.5));
    CHECK(r.gradient_sq_weight == doctest::Approx(0.0));

    // so L(0) equals the unit-diffusivity heat operator
    auto L0 = linearize_closed_form(problem, problem.zero_state());
    auto heat = make_parabolic_problem(heat_spec(1.0, 6, 5, 0.2));
    auto L_heat = linearize_closed_form(heat, heat.zero_state());
    CHECK((L0.dense() - L_heat.dense()).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("parabolic family: polynomial diffusivity is exactly factorizable") {
    ParabolicProblemSpec spec;
    spec.a = [](double u) { return 1.0 + u * u; };
    spec.a_prime = [](double u) { return 2.0 * u; };
    spec.a_second = [](double) { return 2.0; };
    spec.gamma = [](double u) { return u + u * u * u / 3.0; };
    spec.bound_lower = 1.0;
    spec.bound_upper = 6.0;
    spec.t_final = 0.3;
    spec.n_space = 10;
    spec.n_time = 8;
    auto problem = make_parabolic_problem(spec);
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const StateVector u = testing::random_state(problem, seed, 0.7);
        CHECK(factorization_residual(problem, u, gauss_legendre(16)) <= 1e-10);
        // quadratic integrand in the segment parameter: two nodes suffice
        CHECK(factorization_residual(problem, u, gauss_legendre(2)) <= 1e-12);
    }
}

TEST_CASE("parabolic family: supplied and computed antiderivatives agree") {
    ParabolicProblemSpec with_gamma;
    with_gamma.a = [](double u) { return 2.0 + std::sin(u); };
    with_gamma.a_prime = [](double u) { return std::cos(u); };
    with_gamma.a_second = [](double u) { return -std::sin(u); };
    with_gamma.gamma = [](double u) { return 2.0 * u + 1.0 - std::cos(u); };
    with_gamma.bound_lower = 1.0;
    with_gamma.bound_upper = 3.0;
    with_gamma.t_final = 0.2;
    with_gamma.n_space = 6;
    with_gamma.n_time = 5;
    auto a_problem = make_parabolic_problem(with_gamma);

    ParabolicProblemSpec no_gamma = with_gamma;
    no_gamma.gamma.reset();  // adaptive quadrature fallback
    auto b_problem = make_parabolic_problem(no_gamma);

    const StateVector u = testing::random_state(a_problem, 5, 0.6);
    auto La = linearize_closed_form(a_problem, u);
    auto Lb = linearize_closed_form(b_problem, u);
    CHECK((La.dense() - Lb.dense()).cwiseAbs().maxCoeff() <= 1e-9);
}

TEST_CASE("parabolic family: inconsistent antiderivative is rejected") {
    ParabolicProblemSpec spec;
    spec.a = [](double u) { return 1.0 + u * u; };
    spec.a_prime = [](double u) { return 2.0 * u; };
    spec.a_second = [](double) { return 2.0; };
    spec.gamma = [](double u) { return u; };  // gamma' != a
    spec.bound_lower = 0.5;
    spec.bound_upper = 6.0;
    CHECK_THROWS_AS(make_parabolic_problem(spec), InvalidSpecError);
}

TEST_CASE("manufactured right-hand sides") {
    EllipticProblemSpec spec;
    spec.g = [](double, double, double u) { return u + 0.1 * u * u * u; };
    spec.g_u = [](double, double, double u) { return 1.0 + 0.3 * u * u; };
    spec.n = 24;
    spec.reaction_floor = 1.0;
    auto problem = make_elliptic_problem(spec);

    // u = 0 manufactures f = 0
    CHECK(manufacture_rhs(problem, problem.zero_state()).norm() == 0.0);

    // closed loop: solving with the manufactured f recovers u_exact
    const StateVector u_exact = testing::smooth_state_1d(problem, 31, 0.5);
    const StateVector f = manufacture_rhs(problem, u_exact);
    const IterationReport report = run_fixed_point(problem, f, f, {});
    REQUIRE(report.converged());
    CHECK((report.final_state->values() - u_exact.values()).cwiseAbs().maxCoeff() <= 1e-9);

    // linear problem: f is the matrix image
    Eigen::MatrixXd M(3, 3);
    M << 2, 0, 0, 0, 3, 0, 0, 0, 4;
    auto linear = make_linear_problem(M, NormKind::Sup);
    const StateVector w = linear.make_state((Eigen::VectorXd(3) << 1, 1, 1).finished());
    CHECK(manufacture_rhs(linear, w).values().isApprox((Eigen::VectorXd(3) << 2, 3, 4).finished()));
}
