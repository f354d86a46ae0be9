#include "glin/linsolve.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "glin/errors.hpp"

namespace glin {

namespace {

constexpr int kDenseAutoLimit = 4096;   // Auto picks dense LU up to this size
constexpr double kPivotFloor = 1e-14;   // relative pivot threshold
constexpr std::uint64_t kNormSeed = 0x5EED;

Eigen::VectorXd seeded_unit_vector(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) {
        v[i] = gauss(rng);
    }
    const double nrm = v.norm();
    return nrm > 0.0 ? Eigen::VectorXd(v / nrm) : Eigen::VectorXd::Unit(n, 0);
}

Eigen::PartialPivLU<Eigen::MatrixXd> factor_checked(const Eigen::MatrixXd& M) {
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(M);
    const Eigen::VectorXd diag = lu.matrixLU().diagonal().cwiseAbs();
    const double scale = diag.maxCoeff();
    if (!(scale > 0.0) || diag.minCoeff() <= kPivotFloor * scale) {
        throw SingularOperatorError("dense factorization: pivot below 1e-14 of the operator scale");
    }
    return lu;
}

double relative_residual(const LinearOperatorHandle& L, const Eigen::VectorXd& w,
                         const Eigen::VectorXd& f, const Mesh& mesh, double f_norm) {
    const Eigen::VectorXd r = L.apply(w) - f;
    return norm_of(r, mesh, L.norm_kind()) / f_norm;
}

Eigen::VectorXd dense_lu_solve(const LinearOperatorHandle& L, const Eigen::VectorXd& f,
                               const SolveOptions& opts, const Mesh& mesh, double f_norm) {
    const Eigen::MatrixXd& M = L.dense();
    const auto lu = factor_checked(M);
    Eigen::VectorXd w = lu.solve(f);
    double rel = relative_residual(L, w, f, mesh, f_norm);
    if (rel > opts.tolerance) {
        w += lu.solve(f - M * w);  // one step of iterative refinement
        rel = relative_residual(L, w, f, mesh, f_norm);
    }
    if (rel > opts.tolerance && rel > 1e-11) {
        throw SingularOperatorError("dense solve did not reach the residual target", rel);
    }
    return w;
}

Eigen::VectorXd conjugate_gradient(const LinearOperatorHandle& L, const Eigen::VectorXd& f,
                                   const SolveOptions& opts, const Mesh& mesh, double f_norm) {
    if (!L.symmetric() || !L.positive_definite()) {
        throw InvalidArgumentError(
            "conjugate-gradient requires the symmetric and positive-definite flags");
    }
    const int n = static_cast<int>(f.size());
    Eigen::VectorXd w = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd r = f;
    Eigen::VectorXd p = r;
    double rr = r.squaredNorm();
    const double target = opts.tolerance * f.norm();
    for (int it = 0; it < opts.max_iterations && std::sqrt(rr) > target; ++it) {
        const Eigen::VectorXd Ap = L.apply(p);
        const double pAp = p.dot(Ap);
        if (!(pAp > 0.0)) {
            throw SingularOperatorError("conjugate-gradient: operator not positive definite",
                                        relative_residual(L, w, f, mesh, f_norm));
        }
        const double alpha = rr / pAp;
        w += alpha * p;
        r -= alpha * Ap;
        const double rr_next = r.squaredNorm();
        p = r + (rr_next / rr) * p;
        rr = rr_next;
    }
    if (std::sqrt(rr) > target) {
        throw SingularOperatorError("conjugate-gradient stagnated",
                                    relative_residual(L, w, f, mesh, f_norm));
    }
    return w;
}

// Restarted GMRES with Givens rotations, no preconditioner.
Eigen::VectorXd gmres(const LinearOperatorHandle& L, const Eigen::VectorXd& f,
                      const SolveOptions& opts, const Mesh& mesh, double f_norm) {
    const int n = static_cast<int>(f.size());
    const int m = std::min(opts.restart, n);
    const double target = opts.tolerance * f.norm();

    Eigen::VectorXd w = Eigen::VectorXd::Zero(n);
    double best_beta = f.norm();
    int total_iters = 0;

    while (total_iters < opts.max_iterations) {
        Eigen::VectorXd r = f - L.apply(w);
        const double beta = r.norm();
        if (beta <= target) {
            return w;
        }
        // stagnation across restarts
        if (total_iters > 0 && beta > 0.999 * best_beta) {
            throw SingularOperatorError("gmres stagnated across a restart cycle",
                                        relative_residual(L, w, f, mesh, f_norm));
        }
        best_beta = std::min(best_beta, beta);

        Eigen::MatrixXd V(n, m + 1);
        Eigen::MatrixXd H = Eigen::MatrixXd::Zero(m + 1, m);
        Eigen::VectorXd cs = Eigen::VectorXd::Zero(m);
        Eigen::VectorXd sn = Eigen::VectorXd::Zero(m);
        Eigen::VectorXd g = Eigen::VectorXd::Zero(m + 1);
        V.col(0) = r / beta;
        g[0] = beta;

        int k = 0;
        for (; k < m && total_iters < opts.max_iterations; ++k, ++total_iters) {
            Eigen::VectorXd v = L.apply(V.col(k));
            for (int j = 0; j <= k; ++j) {  // modified Gram-Schmidt
                H(j, k) = V.col(j).dot(v);
                v -= H(j, k) * V.col(j);
            }
            H(k + 1, k) = v.norm();
            if (H(k + 1, k) > 0.0) {
                V.col(k + 1) = v / H(k + 1, k);
            }
            for (int j = 0; j < k; ++j) {  // apply accumulated rotations
                const double t = cs[j] * H(j, k) + sn[j] * H(j + 1, k);
                H(j + 1, k) = -sn[j] * H(j, k) + cs[j] * H(j + 1, k);
                H(j, k) = t;
            }
            const double denom = std::hypot(H(k, k), H(k + 1, k));
            if (denom == 0.0) {
                break;  // happy breakdown
            }
            cs[k] = H(k, k) / denom;
            sn[k] = H(k + 1, k) / denom;
            H(k, k) = denom;
            H(k + 1, k) = 0.0;
            g[k + 1] = -sn[k] * g[k];
            g[k] *= cs[k];
            if (std::abs(g[k + 1]) <= target) {
                ++k;
                ++total_iters;
                break;
            }
        }
        if (k > 0) {
            const Eigen::VectorXd y =
                H.topLeftCorner(k, k).triangularView<Eigen::Upper>().solve(g.head(k));
            w += V.leftCols(k) * y;
        } else {
            break;
        }
    }
    const double rel = relative_residual(L, w, f, mesh, f_norm);
    if (rel > opts.tolerance) {
        throw SingularOperatorError("gmres hit the iteration cap", rel);
    }
    return w;
}

}  // namespace

void SolveOptions::validate() const {
    if (!(tolerance > 0.0 && tolerance < 1.0)) {
        throw InvalidArgumentError("solve tolerance must lie in (0, 1)");
    }
    if (max_iterations < 1) {
        throw InvalidArgumentError("solve max_iterations must be >= 1");
    }
    if (restart < 1) {
        throw InvalidArgumentError("gmres restart length must be >= 1");
    }
}

StateVector solve(const LinearOperatorHandle& L, const StateVector& f, const SolveOptions& opts) {
    opts.validate();
    if (L.dim() != f.size()) {
        throw DimensionError("solve: operator dimension " + std::to_string(L.dim()) +
                             " vs right-hand side of size " + std::to_string(f.size()));
    }
    const Mesh& mesh = *f.mesh();
    const double f_norm = f.norm();
    if (f_norm == 0.0) {
        return f.with_values(Eigen::VectorXd::Zero(f.size()));
    }

    SolveMethod method = opts.method;
    if (method == SolveMethod::Auto) {
        if (L.has_dense() && L.dim() <= kDenseAutoLimit) {
            method = SolveMethod::DenseLU;
        } else if (L.symmetric() && L.positive_definite()) {
            method = SolveMethod::ConjugateGradient;
        } else {
            method = SolveMethod::Gmres;
        }
    }

    Eigen::VectorXd w;
    switch (method) {
        case SolveMethod::DenseLU:
            w = dense_lu_solve(L, f.values(), opts, mesh, f_norm);
            break;
        case SolveMethod::ConjugateGradient:
            w = conjugate_gradient(L, f.values(), opts, mesh, f_norm);
            break;
        case SolveMethod::Gmres:
            w = gmres(L, f.values(), opts, mesh, f_norm);
            break;
        case SolveMethod::Auto:
            break;  // unreachable
    }
    if (!w.allFinite()) {
        throw SingularOperatorError("solve produced non-finite values");
    }
    return f.with_values(std::move(w));
}

double estimate_operator_norm(const LinearOperatorHandle& L, int iterations) {
    if (iterations < 10) {
        throw InvalidArgumentError("estimate_operator_norm: needs at least 10 iterations");
    }
    if (L.norm_kind() == NormKind::Sup) {
        if (!L.has_dense()) {
            throw UnsupportedOperationError(
                "sup-norm operator norm needs a dense realization (max absolute row sum)");
        }
        return L.dense().cwiseAbs().rowwise().sum().maxCoeff();
    }
    // Spectral norm by power iteration on the normal operator. With a uniform
    // cell volume the discrete-L2 operator norm equals the Euclidean one.
    if (!L.has_adjoint() && !L.has_dense()) {
        throw UnsupportedOperationError(
            "spectral norm estimation needs an adjoint application or a dense realization");
    }
    Eigen::VectorXd v = seeded_unit_vector(L.dim(), kNormSeed);
    double sigma = 0.0;
    for (int it = 0; it < iterations; ++it) {
        Eigen::VectorXd z = L.apply_adjoint(L.apply(v));
        const double nrm = z.norm();
        if (nrm <= 1e-300) {
            return 0.0;  // zero (or numerically zero) operator
        }
        sigma = std::sqrt(nrm);  // v is unit, so |A^T A v| -> sigma_max^2
        v = z / nrm;
    }
    return sigma;
}

double estimate_inverse_norm(const LinearOperatorHandle& L, const SolveOptions& opts) {
    opts.validate();
    if (L.norm_kind() == NormKind::Sup) {
        if (!L.has_dense()) {
            throw UnsupportedOperationError(
                "sup-norm inverse norm needs a dense realization");
        }
        const auto lu = factor_checked(L.dense());
        const Eigen::MatrixXd inv = lu.inverse();
        return inv.cwiseAbs().rowwise().sum().maxCoeff();
    }

    const int iterations = std::max(50, opts.max_iterations / 10);
    Eigen::VectorXd v = seeded_unit_vector(L.dim(), kNormSeed);
    double lambda = 0.0;

    if (L.has_dense()) {
        const auto lu = factor_checked(L.dense());
        for (int it = 0; it < iterations; ++it) {
            // (M M^T)^-1 v = M^-T (M^-1 v): power iteration on the inverse
            // normal operator gives 1/sigma_min^2.
            Eigen::VectorXd z = lu.adjoint().solve(lu.solve(v));
            const double nrm = z.norm();
            if (!(nrm > 0.0) || !z.allFinite()) {
                throw SingularOperatorError("inverse norm estimation broke down");
            }
            lambda = nrm;
            v = z / nrm;
        }
        return std::sqrt(lambda);
    }

    if (!L.has_adjoint()) {
        throw UnsupportedOperationError(
            "matrix-free inverse norm estimation needs an adjoint application");
    }
    LinearOperatorHandle adjoint(
        L.dim(), [&L](const Eigen::VectorXd& x) { return L.apply_adjoint(x); }, L.norm_kind());
    // Krylov inner solves; tolerances stay well under the 1e-3 estimate target.
    auto dummy_mesh = Mesh::interval(0.0, 1.0, std::max(3, L.dim()));
    for (int it = 0; it < iterations; ++it) {
        const StateVector rhs(dummy_mesh, v, NormKind::DiscreteL2);
        const Eigen::VectorXd t = solve(L, rhs, opts).values();
        const Eigen::VectorXd z = solve(adjoint, rhs.with_values(t), opts).values();
        const double nrm = z.norm();
        if (!(nrm > 0.0)) {
            throw SingularOperatorError("inverse norm estimation broke down");
        }
        lambda = nrm;
        v = z / nrm;
    }
    return std::sqrt(lambda);
}

}  // namespace glin
