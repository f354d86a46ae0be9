#pragma once

#include <Eigen/Core>
#include <functional>
#include <optional>

#include "glin/problem.hpp"
#include "glin/ratio.hpp"

namespace glin {

/// Integral family: A(u)(x) = u(x) + int_D k(x,y) g(u(y)) dy on an interval,
/// discretized on its own nodes with composite trapezoid weights. Sup norm.
struct IntegralProblemSpec {
    std::function<double(double, double)> kernel;  // k(x, y)
    std::function<double(double)> g;               // g(0) must be 0
    std::function<double(double)> g_prime;
    double x_lo = 0.0;
    double x_hi = 1.0;
    int n = 65;
    bool symmetric_kernel = false;  // checked on a sample grid when set
};

ProblemDefinition make_integral_problem(const IntegralProblemSpec& spec);

/// Semilinear elliptic family: A(u) = -Lap_h u + g(x, u) with homogeneous
/// Dirichlet rows eliminated (interior nodes only), second-order central
/// differences, discrete L2 norm. 1D on (0,1) or 2D on the unit square.
struct EllipticProblemSpec {
    // g(x, y, u); the y argument is ignored in 1D
    std::function<double(double, double, double)> g;
    std::function<double(double, double, double)> g_u;
    int dimension = 1;  // 1 or 2
    int n = 64;         // interior nodes per axis
    // Optional declared split g(x,u)/u = a + q(x;u) with a > 0, q >= 0;
    // enables the positive-definite flag and the 1/a inverse bound.
    std::optional<double> reaction_floor;
};

ProblemDefinition make_elliptic_problem(const EllipticProblemSpec& spec);

/// Quasilinear parabolic family in Volterra form on the space-time grid:
///   A(u)(x,t) = u(x,t) - int_0^t d/dx[ a(u) du/dx ] dtau,
/// right-hand side u0(x) + int_0^t f dtau. Conservative flux discretization
/// with face-averaged coefficients, trapezoid time weights, discrete L2 norm
/// over the cylinder.
struct ParabolicProblemSpec {
    std::function<double(double)> a;  // diffusivity, 0 < c <= a <= m
    std::function<double(double)> a_prime;
    std::function<double(double)> a_second;
    // Antiderivative of a with gamma(0) = 0. When absent it is computed by
    // adaptive Simpson quadrature; when present, gamma' = a is spot-checked.
    std::optional<std::function<double(double)>> gamma;
    double bound_lower = 0.0;  // c of the ellipticity window
    double bound_upper = 0.0;  // m bounding a, |a'|, |a''|
    double check_range = 2.0;  // the bounds are verified for |u| <= check_range
    double t_final = 1.0;
    int n_space = 32;  // interior space nodes
    int n_time = 32;   // time levels including t = 0
};

ProblemDefinition make_parabolic_problem(const ParabolicProblemSpec& spec);

/// Decoupled componentwise family A(u)_i = g(u_i) on a small interval mesh;
/// hosts the scalar fixtures (e.g. the cubic divergence example). Sup norm.
struct DiagonalProblemSpec {
    std::function<double(double)> g;  // g(0) must be 0
    std::function<double(double)> g_prime;
    int n = 3;
};

ProblemDefinition make_diagonal_problem(const DiagonalProblemSpec& spec);

/// Linear test family A(u) = M u (any u); closed form and derivative are M
/// itself.
ProblemDefinition make_linear_problem(Eigen::MatrixXd M, NormKind norm_kind);

/// Manufactured right-hand side: f = A(u_exact). The discrete solution of
/// A(u) = f is u_exact itself, giving a closed-loop oracle with no
/// discretization gap.
StateVector manufacture_rhs(const ProblemDefinition& problem, const StateVector& u_exact);

/// Volterra right-hand side for the parabolic family from pointwise data:
/// F(x_i, t_n) = u0(x_i) + trapezoid-in-time of f(x_i, tau) up to t_n.
StateVector parabolic_rhs(const ProblemDefinition& problem,
                          const std::function<double(double)>& u0,
                          const std::function<double(double, double)>& f);

}  // namespace glin
