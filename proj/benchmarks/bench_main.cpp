#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

#include "glin/glin.hpp"

using namespace glin;

namespace {

ProblemDefinition elliptic_fixture(int n) {
    EllipticProblemSpec spec;
    spec.g = [](double, double, double u) { return u + 0.1 * u * u * u; };
    spec.g_u = [](double, double, double u) { return 1.0 + 0.3 * u * u; };
    spec.n = n;
    spec.reaction_floor = 1.0;
    return make_elliptic_problem(spec);
}

StateVector sine_state(const ProblemDefinition& problem, double amplitude) {
    const auto& x = problem.mesh()->axis(0).coordinates;
    Eigen::VectorXd v(problem.mesh()->size());
    for (int i = 0; i < problem.mesh()->size(); ++i) {
        v[i] = amplitude * std::sin(std::numbers::pi * x[static_cast<std::size_t>(i)]);
    }
    return problem.make_state(std::move(v));
}

void BM_LinearizeQuadrature(benchmark::State& state) {
    auto problem = elliptic_fixture(static_cast<int>(state.range(0)));
    const StateVector u = sine_state(problem, 0.5);
    const QuadratureRule rule = gauss_legendre(8);
    for (auto _ : state) {
        benchmark::DoNotOptimize(linearize_by_quadrature(problem, u, rule));
    }
}
BENCHMARK(BM_LinearizeQuadrature)->Arg(64)->Arg(256);

void BM_LinearizeClosedForm(benchmark::State& state) {
    auto problem = elliptic_fixture(static_cast<int>(state.range(0)));
    const StateVector u = sine_state(problem, 0.5);
    for (auto _ : state) {
        benchmark::DoNotOptimize(linearize_closed_form(problem, u));
    }
}
BENCHMARK(BM_LinearizeClosedForm)->Arg(64)->Arg(256);

void BM_DenseSolve(benchmark::State& state) {
    auto problem = elliptic_fixture(static_cast<int>(state.range(0)));
    auto L = linearize_closed_form(problem, sine_state(problem, 0.5));
    const StateVector f = sine_state(problem, 1.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve(L, f));
    }
}
BENCHMARK(BM_DenseSolve)->Arg(128)->Arg(512);

void BM_FixedPointIteration(benchmark::State& state) {
    auto problem = elliptic_fixture(static_cast<int>(state.range(0)));
    const StateVector f = manufacture_rhs(problem, sine_state(problem, 0.5));
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_fixed_point(problem, f, f, {}));
    }
}
BENCHMARK(BM_FixedPointIteration)->Arg(32)->Arg(64);

void BM_OperatorNormPowerIteration(benchmark::State& state) {
    auto problem = elliptic_fixture(static_cast<int>(state.range(0)));
    auto L = linearize_closed_form(problem, sine_state(problem, 0.5));
    for (auto _ : state) {
        benchmark::DoNotOptimize(estimate_operator_norm(L));
    }
}
BENCHMARK(BM_OperatorNormPowerIteration)->Arg(128)->Arg(256);

void BM_FactorizationResidual(benchmark::State& state) {
    ParabolicProblemSpec spec;
    spec.a = [](double u) { return 1.0 + u * u; };
    spec.a_prime = [](double u) { return 2.0 * u; };
    spec.a_second = [](double) { return 2.0; };
    spec.gamma = [](double u) { return u + u * u * u / 3.0; };
    spec.bound_lower = 1.0;
    spec.bound_upper = 6.0;
    spec.t_final = 0.25;
    spec.n_space = static_cast<int>(state.range(0));
    spec.n_time = static_cast<int>(state.range(0));
    auto problem = make_parabolic_problem(spec);
    const auto& x = problem.mesh()->axis(0).coordinates;
    const int nx = problem.mesh()->axis(0).size();
    Eigen::VectorXd v(problem.mesh()->size());
    for (int idx = 0; idx < problem.mesh()->size(); ++idx) {
        v[idx] = 0.5 * std::sin(std::numbers::pi * x[static_cast<std::size_t>(idx % nx)]);
    }
    const StateVector u = problem.make_state(std::move(v));
    const QuadratureRule rule = gauss_legendre(16);
    for (auto _ : state) {
        benchmark::DoNotOptimize(factorization_residual(problem, u, rule));
    }
}
BENCHMARK(BM_FactorizationResidual)->Arg(16)->Arg(32);

}  // namespace

BENCHMARK_MAIN();
