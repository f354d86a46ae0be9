#pragma once

// Independent oracles for the test suites. Everything here is written from
// scratch with literal loops and standard Eigen decompositions so it shares
// no code path with the library implementations it checks.

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

namespace oracle {

// Brute-force 1D reaction-diffusion residual on n interior nodes of (0,1):
// out_i = (2u_i - u_{i-1} - u_{i+1}) / h^2 + g(u_i), zero boundary values.
inline Eigen::VectorXd reaction_diffusion_1d(const Eigen::VectorXd& u,
                                             const std::function<double(double)>& g) {
    const int n = static_cast<int>(u.size());
    const double h = 1.0 / (n + 1);
    Eigen::VectorXd out(n);
    for (int i = 0; i < n; ++i) {
        const double left = (i > 0) ? u[i - 1] : 0.0;
        const double right = (i + 1 < n) ? u[i + 1] : 0.0;
        out[i] = (2.0 * u[i] - left - right) / (h * h) + g(u[i]);
    }
    return out;
}

// Central difference quotient of a nonlinear map: (F(u + t w) - F(u - t w)) / (2t)
// with the magnitude-balanced step t = 1e-6 (1 + |u|) / (1 + |w|).
inline Eigen::VectorXd derivative_quotient(
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& F, const Eigen::VectorXd& u,
    const Eigen::VectorXd& w, double u_norm, double w_norm) {
    const double t = 1e-6 * (1.0 + u_norm) / (1.0 + w_norm);
    return (F(u + t * w) - F(u - t * w)) / (2.0 * t);
}

// Eigenvalues of the 1D Dirichlet second-difference operator on n interior
// nodes: lambda_k = (4 / h^2) sin^2(k pi h / 2), k = 1..n, h = 1/(n+1).
inline double laplacian_eigenvalue_1d(int k, int n) {
    const double h = 1.0 / (n + 1);
    const double s = std::sin(0.5 * k * std::numbers::pi * h);
    return 4.0 / (h * h) * s * s;
}

// Discrete sine eigenvector, unit-free: v_k(i) = sin(k pi x_i).
inline Eigen::VectorXd laplacian_eigenvector_1d(int k, int n) {
    const double h = 1.0 / (n + 1);
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) {
        v[i] = std::sin(k * std::numbers::pi * (i + 1) * h);
    }
    return v;
}

// Solve (-Lap_h + a) w = f on n interior 1D nodes by eigen-expansion.
inline Eigen::VectorXd poisson_solve_1d(const Eigen::VectorXd& f, double a) {
    const int n = static_cast<int>(f.size());
    Eigen::VectorXd w = Eigen::VectorXd::Zero(n);
    for (int k = 1; k <= n; ++k) {
        const Eigen::VectorXd vk = laplacian_eigenvector_1d(k, n);
        const double coeff = f.dot(vk) / vk.squaredNorm();
        w += coeff / (laplacian_eigenvalue_1d(k, n) + a) * vk;
    }
    return w;
}

// Same by separable eigen-expansion on the nx-by-ny interior grid of the unit
// square (x index fastest). O(n^2) loops; fine at test sizes.
inline Eigen::VectorXd poisson_solve_2d(const Eigen::VectorXd& f, int nx, int ny, double a) {
    Eigen::VectorXd w = Eigen::VectorXd::Zero(nx * ny);
    for (int k = 1; k <= nx; ++k) {
        for (int l = 1; l <= ny; ++l) {
            Eigen::VectorXd vkl(nx * ny);
            for (int j = 0; j < ny; ++j) {
                for (int i = 0; i < nx; ++i) {
                    vkl[j * nx + i] = std::sin(k * std::numbers::pi * (i + 1) / (nx + 1.0)) *
                                      std::sin(l * std::numbers::pi * (j + 1) / (ny + 1.0));
                }
            }
            const double lambda =
                laplacian_eigenvalue_1d(k, nx) + laplacian_eigenvalue_1d(l, ny);
            const double coeff = f.dot(vkl) / vkl.squaredNorm();
            w += coeff / (lambda + a) * vkl;
        }
    }
    return w;
}

// Exact spectral norms through Eigen's SVD (independent of power iteration).
inline double svd_operator_norm(const Eigen::MatrixXd& M) {
    return Eigen::JacobiSVD<Eigen::MatrixXd>(M).singularValues().maxCoeff();
}

inline double svd_inverse_norm(const Eigen::MatrixXd& M) {
    return 1.0 / Eigen::JacobiSVD<Eigen::MatrixXd>(M).singularValues().minCoeff();
}

// Rank-one solve (I + x v^T) w = f by the Sherman-Morrison formula.
inline Eigen::VectorXd rank_one_solve(const Eigen::VectorXd& x, const Eigen::VectorXd& v,
                                      const Eigen::VectorXd& f) {
    return f - x * (v.dot(f) / (1.0 + v.dot(x)));
}

// Separation-of-variables solution of u_t = a u_xx, u(x,0) = sin(pi x),
// homogeneous Dirichlet: u(x,t) = exp(-a pi^2 t) sin(pi x).
inline double heat_solution(double x, double t, double a) {
    return std::exp(-a * std::numbers::pi * std::numbers::pi * t) *
           std::sin(std::numbers::pi * x);
}

}  // namespace oracle
