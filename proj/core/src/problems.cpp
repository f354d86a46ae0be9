#include "glin/problems.hpp"

#include <cmath>
#include <memory>
#include <vector>

#include "glin/errors.hpp"

namespace glin {

namespace {

// ---------------------------------------------------------------------------
// shared discrete operators
// ---------------------------------------------------------------------------

// Negative second difference with eliminated homogeneous Dirichlet rows.
Eigen::MatrixXd dense_laplacian_1d(int n, double h) {
    Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(n, n);
    const double s = 1.0 / (h * h);
    for (int i = 0; i < n; ++i) {
        lap(i, i) = 2.0 * s;
        if (i > 0) lap(i, i - 1) = -s;
        if (i + 1 < n) lap(i, i + 1) = -s;
    }
    return lap;
}

// 5-point stencil on the interior of the unit square, x index fastest.
Eigen::MatrixXd dense_laplacian_2d(int nx, int ny, double hx, double hy) {
    const int n = nx * ny;
    Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(n, n);
    const double sx = 1.0 / (hx * hx);
    const double sy = 1.0 / (hy * hy);
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            const int row = j * nx + i;
            lap(row, row) = 2.0 * sx + 2.0 * sy;
            if (i > 0) lap(row, row - 1) = -sx;
            if (i + 1 < nx) lap(row, row + 1) = -sx;
            if (j > 0) lap(row, row - nx) = -sy;
            if (j + 1 < ny) lap(row, row + nx) = -sy;
        }
    }
    return lap;
}

double adaptive_simpson(const std::function<double(double)>& f, double lo, double hi, double fl,
                        double fm, double fh, double whole, double tol, int depth) {
    const double mid = 0.5 * (lo + hi);
    const double lm = 0.5 * (lo + mid);
    const double rm = 0.5 * (mid + hi);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (mid - lo) / 6.0 * (fl + 4.0 * flm + fm);
    const double right = (hi - mid) / 6.0 * (fm + 4.0 * frm + fh);
    if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol) {
        return left + right + (left + right - whole) / 15.0;
    }
    return adaptive_simpson(f, lo, mid, fl, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(f, mid, hi, fm, frm, fh, right, 0.5 * tol, depth - 1);
}

double integrate(const std::function<double(double)>& f, double lo, double hi, double tol) {
    if (lo == hi) return 0.0;
    const double fl = f(lo);
    const double fh = f(hi);
    const double fm = f(0.5 * (lo + hi));
    const double whole = (hi - lo) / 6.0 * (fl + 4.0 * fm + fh);
    return adaptive_simpson(f, lo, hi, fl, fm, fh, whole, tol, 32);
}

}  // namespace

// ---------------------------------------------------------------------------
// integral family
// ---------------------------------------------------------------------------

ProblemDefinition make_integral_problem(const IntegralProblemSpec& spec) {
    if (!spec.kernel || !spec.g || !spec.g_prime) {
        throw InvalidSpecError("integral problem: kernel, g and g' are required");
    }
    if (std::abs(spec.g(0.0)) > 1e-13) {
        throw InvalidSpecError("integral problem: g(0) != 0");
    }
    if (!(spec.x_hi > spec.x_lo)) {
        throw InvalidSpecError("integral problem: empty domain");
    }
    auto mesh = Mesh::interval(spec.x_lo, spec.x_hi, spec.n);
    const auto& x = mesh->axis(0).coordinates;
    const int n = spec.n;
    const double h = mesh->axis(0).spacing;

    // Nystrom matrix K_ij = w_j k(x_i, x_j) with composite trapezoid weights.
    auto K = std::make_shared<Eigen::MatrixXd>(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double wj = (j == 0 || j == n - 1) ? 0.5 * h : h;
            (*K)(i, j) = wj * spec.kernel(x[static_cast<std::size_t>(i)],
                                          x[static_cast<std::size_t>(j)]);
        }
    }
    if (spec.symmetric_kernel) {
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                if (std::abs(spec.kernel(x[static_cast<std::size_t>(i)],
                                         x[static_cast<std::size_t>(j)]) -
                             spec.kernel(x[static_cast<std::size_t>(j)],
                                         x[static_cast<std::size_t>(i)])) > 1e-12) {
                    throw InvalidSpecError("integral problem: kernel declared symmetric but is not");
                }
            }
        }
    }

    auto g = spec.g;
    auto g_prime = spec.g_prime;
    auto ratio = std::make_shared<const RatioCoefficient>(RatioCoefficient::reaction(g, g_prime));

    ProblemDefinition problem(
        mesh, NormKind::Sup, "integral",
        [K, g](const Eigen::VectorXd& u) -> Eigen::VectorXd {
            return u + (*K) * u.unaryExpr([&g](double v) { return g(v); });
        },
        [K, g_prime](const Eigen::VectorXd& u, const Eigen::VectorXd& w) -> Eigen::VectorXd {
            return w + (*K) * u.unaryExpr([&g_prime](double v) { return g_prime(v); })
                               .cwiseProduct(w);
        });
    problem.set_dense_derivative([K, g_prime, n](const Eigen::VectorXd& u) -> Eigen::MatrixXd {
        Eigen::MatrixXd M = Eigen::MatrixXd::Identity(n, n);
        for (int j = 0; j < n; ++j) {
            M.col(j) += K->col(j) * g_prime(u[j]);
        }
        return M;
    });
    problem.set_closed_form([K, ratio, n](const Eigen::VectorXd& u) -> LinearOperatorHandle {
        Eigen::MatrixXd M = Eigen::MatrixXd::Identity(n, n);
        for (int j = 0; j < n; ++j) {
            M.col(j) += K->col(j) * ratio->eval(RatioKind::ReactionSecant, u[j]);
        }
        return LinearOperatorHandle::from_dense(std::move(M), NormKind::Sup);
    });
    problem.set_identity_remainder([K, g](const Eigen::VectorXd& u) -> Eigen::VectorXd {
        return (*K) * u.unaryExpr([&g](double v) { return g(v); });
    });
    problem.set_parameter("n", n);
    return problem;
}

// ---------------------------------------------------------------------------
// elliptic family
// ---------------------------------------------------------------------------

ProblemDefinition make_elliptic_problem(const EllipticProblemSpec& spec) {
    if (!spec.g || !spec.g_u) {
        throw InvalidSpecError("elliptic problem: g and g_u are required");
    }
    if (spec.dimension != 1 && spec.dimension != 2) {
        throw InvalidSpecError("elliptic problem: dimension must be 1 or 2");
    }
    std::shared_ptr<const Mesh> mesh;
    std::shared_ptr<Eigen::MatrixXd> lap;
    auto coords = std::make_shared<std::vector<std::pair<double, double>>>();
    if (spec.dimension == 1) {
        mesh = Mesh::interval_interior(0.0, 1.0, spec.n);
        lap = std::make_shared<Eigen::MatrixXd>(dense_laplacian_1d(spec.n, mesh->axis(0).spacing));
        for (double xi : mesh->axis(0).coordinates) {
            coords->emplace_back(xi, 0.0);
        }
    } else {
        mesh = Mesh::rectangle_interior(spec.n, spec.n);
        lap = std::make_shared<Eigen::MatrixXd>(dense_laplacian_2d(
            spec.n, spec.n, mesh->axis(0).spacing, mesh->axis(1).spacing));
        for (double yj : mesh->axis(1).coordinates) {
            for (double xi : mesh->axis(0).coordinates) {
                coords->emplace_back(xi, yj);
            }
        }
    }
    const int n = mesh->size();

    auto g = spec.g;
    auto g_u = spec.g_u;
    for (const auto& [xi, yj] : *coords) {
        if (std::abs(g(xi, yj, 0.0)) > 1e-13) {
            throw InvalidSpecError("elliptic problem: g(x, 0) != 0 at a grid node");
        }
    }
    // One bounded reaction ratio per node, g(x, u)/u with limit g_u(x, 0).
    auto ratios = std::make_shared<std::vector<RatioCoefficient>>();
    ratios->reserve(static_cast<std::size_t>(n));
    for (const auto& [xi, yj] : *coords) {
        ratios->push_back(RatioCoefficient::reaction(
            [g, xi, yj](double v) { return g(xi, yj, v); },
            [g_u, xi, yj](double v) { return g_u(xi, yj, v); }));
    }

    if (spec.reaction_floor) {
        const double a = *spec.reaction_floor;
        if (!(a > 0.0)) {
            throw InvalidSpecError("elliptic problem: declared reaction floor must be positive");
        }
        for (double uv : {-2.0, -1.0, -0.5, -0.1, 0.1, 0.5, 1.0, 2.0}) {
            for (int i = 0; i < n; ++i) {
                const double r = (*ratios)[static_cast<std::size_t>(i)].eval(
                    RatioKind::ReactionSecant, uv);
                if (r - a < -1e-12) {
                    throw InvalidSpecError(
                        "elliptic problem: declared split violated, g(x,u)/u < floor");
                }
            }
        }
    }

    ProblemDefinition problem(
        mesh, NormKind::DiscreteL2, "elliptic",
        [lap, g, coords](const Eigen::VectorXd& u) -> Eigen::VectorXd {
            Eigen::VectorXd out = (*lap) * u;
            for (int i = 0; i < u.size(); ++i) {
                const auto& [xi, yj] = (*coords)[static_cast<std::size_t>(i)];
                out[i] += g(xi, yj, u[i]);
            }
            return out;
        },
        [lap, g_u, coords](const Eigen::VectorXd& u, const Eigen::VectorXd& w) -> Eigen::VectorXd {
            Eigen::VectorXd out = (*lap) * w;
            for (int i = 0; i < u.size(); ++i) {
                const auto& [xi, yj] = (*coords)[static_cast<std::size_t>(i)];
                out[i] += g_u(xi, yj, u[i]) * w[i];
            }
            return out;
        });
    problem.set_dense_derivative([lap, g_u, coords](const Eigen::VectorXd& u) -> Eigen::MatrixXd {
        Eigen::MatrixXd M = *lap;
        for (int i = 0; i < u.size(); ++i) {
            const auto& [xi, yj] = (*coords)[static_cast<std::size_t>(i)];
            M(i, i) += g_u(xi, yj, u[i]);
        }
        return M;
    });
    const bool declared_pd = spec.reaction_floor.has_value();
    problem.set_closed_form(
        [lap, ratios, declared_pd](const Eigen::VectorXd& u) -> LinearOperatorHandle {
            Eigen::MatrixXd M = *lap;
            for (int i = 0; i < u.size(); ++i) {
                M(i, i) += (*ratios)[static_cast<std::size_t>(i)].eval(RatioKind::ReactionSecant,
                                                                       u[i]);
            }
            auto handle = LinearOperatorHandle::from_dense(std::move(M), NormKind::DiscreteL2);
            handle.set_symmetric(true).set_positive_definite(declared_pd);
            return handle;
        });
    problem.set_derivative_symmetric(true);
    problem.set_derivative_positive_definite(declared_pd);
    problem.set_parameter("dimension", spec.dimension);
    problem.set_parameter("n", spec.n);
    if (spec.reaction_floor) {
        problem.set_parameter("reaction_floor", *spec.reaction_floor);
    }
    return problem;
}

// ---------------------------------------------------------------------------
// parabolic family (Volterra form on the space-time grid)
// ---------------------------------------------------------------------------

namespace {

struct ParabolicGrid {
    int nx = 0;
    int nt = 0;
    double h = 0.0;
    double dt = 0.0;

    int index(int i, int n) const noexcept { return n * nx + i; }

    // composite trapezoid weight of time level m in the integral up to level n
    double time_weight(int n, int m) const noexcept {
        if (n == 0 || m > n) return 0.0;
        return (m == 0 || m == n) ? 0.5 * dt : dt;
    }
};

// d/dx [ a(u) du/dx ] with arithmetic face averages and zero boundary values.
void nonlinear_flux_slice(const ParabolicGrid& grid, const std::function<double(double)>& a,
                          const double* u, double* out) {
    const double s = 1.0 / (grid.h * grid.h);
    for (int i = 0; i < grid.nx; ++i) {
        const double ul = (i > 0) ? u[i - 1] : 0.0;
        const double ur = (i + 1 < grid.nx) ? u[i + 1] : 0.0;
        const double fa = 0.5 * (a(u[i]) + a(ur));
        const double fb = 0.5 * (a(ul) + a(u[i]));
        out[i] = s * (fa * (ur - u[i]) - fb * (u[i] - ul));
    }
}

// Exact derivative of the slice above in direction w.
void flux_derivative_slice(const ParabolicGrid& grid, const std::function<double(double)>& a,
                           const std::function<double(double)>& a_prime, const double* u,
                           const double* w, double* out) {
    const double s = 1.0 / (grid.h * grid.h);
    for (int i = 0; i < grid.nx; ++i) {
        const double ul = (i > 0) ? u[i - 1] : 0.0;
        const double ur = (i + 1 < grid.nx) ? u[i + 1] : 0.0;
        const double wl = (i > 0) ? w[i - 1] : 0.0;
        const double wr = (i + 1 < grid.nx) ? w[i + 1] : 0.0;
        const double fa = 0.5 * (a(u[i]) + a(ur));
        const double fb = 0.5 * (a(ul) + a(u[i]));
        const double dfa = 0.5 * (a_prime(u[i]) * w[i] + a_prime(ur) * wr);
        const double dfb = 0.5 * (a_prime(ul) * wl + a_prime(u[i]) * w[i]);
        out[i] = s * (fa * (wr - w[i]) - fb * (w[i] - wl)) +
                 s * (dfa * (ur - u[i]) - dfb * (u[i] - ul));
    }
}

// Tridiagonal matrix of the slice derivative at state u.
Eigen::MatrixXd flux_derivative_matrix(const ParabolicGrid& grid,
                                       const std::function<double(double)>& a,
                                       const std::function<double(double)>& a_prime,
                                       const double* u) {
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(grid.nx, grid.nx);
    const double s = 1.0 / (grid.h * grid.h);
    for (int i = 0; i < grid.nx; ++i) {
        const double ul = (i > 0) ? u[i - 1] : 0.0;
        const double ur = (i + 1 < grid.nx) ? u[i + 1] : 0.0;
        const double fa = 0.5 * (a(u[i]) + a(ur));
        const double fb = 0.5 * (a(ul) + a(u[i]));
        // flux part
        M(i, i) += s * (-fa - fb);
        if (i + 1 < grid.nx) M(i, i + 1) += s * fa;
        if (i > 0) M(i, i - 1) += s * fb;
        // face-average derivative part
        M(i, i) += s * 0.5 * a_prime(u[i]) * ((ur - u[i]) - (u[i] - ul));
        if (i + 1 < grid.nx) M(i, i + 1) += s * 0.5 * a_prime(ur) * (ur - u[i]);
        if (i > 0) M(i, i - 1) += s * 0.5 * a_prime(ul) * (-(u[i] - ul));
    }
    return M;
}

// Closed-form linearization of one slice: conservative flux with the mean
// diffusivity ratio, plus the first-moment pair term. Equals the segment
// integral of flux_derivative_matrix exactly.
Eigen::MatrixXd closed_form_slice(const ParabolicGrid& grid, const RatioCoefficient& ratio,
                                  const double* u) {
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(grid.nx, grid.nx);
    const double s = 1.0 / (grid.h * grid.h);
    for (int i = 0; i < grid.nx; ++i) {
        const double ul = (i > 0) ? u[i - 1] : 0.0;
        const double ur = (i + 1 < grid.nx) ? u[i + 1] : 0.0;
        const double ci = ratio.eval(RatioKind::DiffusionMean, u[i]);
        const double cl = ratio.eval(RatioKind::DiffusionMean, ul);
        const double cr = ratio.eval(RatioKind::DiffusionMean, ur);
        const double fa = 0.5 * (ci + cr);
        const double fb = 0.5 * (cl + ci);
        M(i, i) += s * (-fa - fb);
        if (i + 1 < grid.nx) M(i, i + 1) += s * fa;
        if (i > 0) M(i, i - 1) += s * fb;

        const double ri = ratio.eval(RatioKind::DiffusionFirstMoment, u[i]);
        const double rl = ratio.eval(RatioKind::DiffusionFirstMoment, ul);
        const double rr = ratio.eval(RatioKind::DiffusionFirstMoment, ur);
        M(i, i) += s * 0.5 * ri * ((ur - u[i]) - (u[i] - ul));
        if (i + 1 < grid.nx) M(i, i + 1) += s * 0.5 * rr * (ur - u[i]);
        if (i > 0) M(i, i - 1) += s * 0.5 * rl * (-(u[i] - ul));
    }
    return M;
}

}  // namespace

ProblemDefinition make_parabolic_problem(const ParabolicProblemSpec& spec) {
    if (!spec.a || !spec.a_prime || !spec.a_second) {
        throw InvalidSpecError("parabolic problem: a, a' and a'' are required");
    }
    if (!(spec.bound_lower > 0.0) || !(spec.bound_upper >= spec.bound_lower)) {
        throw InvalidSpecError("parabolic problem: ellipticity window needs 0 < c <= m");
    }
    auto a = spec.a;
    auto a_prime = spec.a_prime;
    auto a_second = spec.a_second;

    std::function<double(double)> gamma;
    if (spec.gamma) {
        gamma = *spec.gamma;
        if (std::abs(gamma(0.0)) > 1e-13) {
            throw InvalidSpecError("parabolic problem: gamma(0) != 0");
        }
        // spot-check gamma' = a
        for (double uv : {-1.5, -0.4, 0.3, 0.9, 1.7}) {
            const double d = 1e-6;
            const double fd = (gamma(uv + d) - gamma(uv - d)) / (2.0 * d);
            if (std::abs(fd - a(uv)) > 1e-8 * (1.0 + std::abs(a(uv)))) {
                throw InvalidSpecError("parabolic problem: gamma' != a at a sample point");
            }
        }
    } else {
        gamma = [a](double u) { return integrate(a, 0.0, u, 1e-13); };
    }

    // ellipticity window (checked on a symmetric sample range)
    for (int k = 0; k <= 32; ++k) {
        const double uv = -spec.check_range + 2.0 * spec.check_range * k / 32.0;
        if (a(uv) < spec.bound_lower - 1e-12 || a(uv) > spec.bound_upper + 1e-12 ||
            std::abs(a_prime(uv)) > spec.bound_upper + 1e-12 ||
            std::abs(a_second(uv)) > spec.bound_upper + 1e-12) {
            throw InvalidSpecError("parabolic problem: diffusivity bounds violated on the range");
        }
    }

    auto mesh = Mesh::space_time_cylinder(spec.n_space, spec.t_final, spec.n_time);
    ParabolicGrid grid{spec.n_space, spec.n_time, mesh->axis(0).spacing, mesh->axis(1).spacing};
    auto ratio =
        std::make_shared<const RatioCoefficient>(RatioCoefficient::diffusion(a, a_prime, a_second, gamma));
    const int n = mesh->size();

    auto accumulate = [grid](const std::vector<Eigen::VectorXd>& slices,
                             Eigen::VectorXd base) -> Eigen::VectorXd {
        for (int lev = 1; lev < grid.nt; ++lev) {
            for (int m = 0; m <= lev; ++m) {
                const double wt = grid.time_weight(lev, m);
                base.segment(grid.index(0, lev), grid.nx) -= wt * slices[static_cast<std::size_t>(m)];
            }
        }
        return base;
    };

    ProblemDefinition problem(
        mesh, NormKind::DiscreteL2, "parabolic",
        [grid, a, accumulate](const Eigen::VectorXd& u) -> Eigen::VectorXd {
            std::vector<Eigen::VectorXd> slices(static_cast<std::size_t>(grid.nt));
            for (int m = 0; m < grid.nt; ++m) {
                auto& s = slices[static_cast<std::size_t>(m)];
                s.resize(grid.nx);
                nonlinear_flux_slice(grid, a, u.data() + grid.index(0, m), s.data());
            }
            return accumulate(slices, u);
        },
        [grid, a, a_prime, accumulate](const Eigen::VectorXd& u,
                                       const Eigen::VectorXd& w) -> Eigen::VectorXd {
            std::vector<Eigen::VectorXd> slices(static_cast<std::size_t>(grid.nt));
            for (int m = 0; m < grid.nt; ++m) {
                auto& s = slices[static_cast<std::size_t>(m)];
                s.resize(grid.nx);
                flux_derivative_slice(grid, a, a_prime, u.data() + grid.index(0, m),
                                      w.data() + grid.index(0, m), s.data());
            }
            return accumulate(slices, w);
        });

    if (n <= 4096) {
        problem.set_dense_derivative([grid, a, a_prime, n](const Eigen::VectorXd& u)
                                         -> Eigen::MatrixXd {
            Eigen::MatrixXd M = Eigen::MatrixXd::Identity(n, n);
            for (int m = 0; m < grid.nt; ++m) {
                const Eigen::MatrixXd block =
                    flux_derivative_matrix(grid, a, a_prime, u.data() + grid.index(0, m));
                for (int lev = std::max(1, m); lev < grid.nt; ++lev) {
                    const double wt = grid.time_weight(lev, m);
                    if (wt != 0.0) {
                        M.block(grid.index(0, lev), grid.index(0, m), grid.nx, grid.nx) -=
                            wt * block;
                    }
                }
            }
            return M;
        });
        problem.set_closed_form([grid, ratio, n](const Eigen::VectorXd& u) -> LinearOperatorHandle {
            Eigen::MatrixXd M = Eigen::MatrixXd::Identity(n, n);
            for (int m = 0; m < grid.nt; ++m) {
                const Eigen::MatrixXd block =
                    closed_form_slice(grid, *ratio, u.data() + grid.index(0, m));
                for (int lev = std::max(1, m); lev < grid.nt; ++lev) {
                    const double wt = grid.time_weight(lev, m);
                    if (wt != 0.0) {
                        M.block(grid.index(0, lev), grid.index(0, m), grid.nx, grid.nx) -=
                            wt * block;
                    }
                }
            }
            return LinearOperatorHandle::from_dense(std::move(M), NormKind::DiscreteL2);
        });
    }
    problem.set_parameter("n_space", spec.n_space);
    problem.set_parameter("n_time", spec.n_time);
    problem.set_parameter("t_final", spec.t_final);
    return problem;
}

// ---------------------------------------------------------------------------
// diagonal and linear test families
// ---------------------------------------------------------------------------

ProblemDefinition make_diagonal_problem(const DiagonalProblemSpec& spec) {
    if (!spec.g || !spec.g_prime) {
        throw InvalidSpecError("diagonal problem: g and g' are required");
    }
    if (std::abs(spec.g(0.0)) > 1e-13) {
        throw InvalidSpecError("diagonal problem: g(0) != 0");
    }
    auto mesh = Mesh::interval(0.0, 1.0, spec.n);
    auto g = spec.g;
    auto g_prime = spec.g_prime;
    auto ratio = std::make_shared<const RatioCoefficient>(RatioCoefficient::reaction(g, g_prime));
    const int n = spec.n;

    ProblemDefinition problem(
        mesh, NormKind::Sup, "diagonal",
        [g](const Eigen::VectorXd& u) -> Eigen::VectorXd {
            return u.unaryExpr([&g](double v) { return g(v); });
        },
        [g_prime](const Eigen::VectorXd& u, const Eigen::VectorXd& w) -> Eigen::VectorXd {
            return u.unaryExpr([&g_prime](double v) { return g_prime(v); }).cwiseProduct(w);
        });
    problem.set_dense_derivative([g_prime, n](const Eigen::VectorXd& u) -> Eigen::MatrixXd {
        Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n, n);
        for (int i = 0; i < n; ++i) {
            M(i, i) = g_prime(u[i]);
        }
        return M;
    });
    problem.set_closed_form([ratio, n](const Eigen::VectorXd& u) -> LinearOperatorHandle {
        Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n, n);
        for (int i = 0; i < n; ++i) {
            M(i, i) = ratio->eval(RatioKind::ReactionSecant, u[i]);
        }
        auto handle = LinearOperatorHandle::from_dense(std::move(M), NormKind::Sup);
        handle.set_symmetric(true);
        return handle;
    });
    problem.set_derivative_symmetric(true);
    return problem;
}

ProblemDefinition make_linear_problem(Eigen::MatrixXd M, NormKind norm_kind) {
    if (M.rows() != M.cols() || M.rows() < 3) {
        throw InvalidSpecError("linear problem: square matrix of size >= 3 required");
    }
    const int n = static_cast<int>(M.rows());
    auto mesh = Mesh::interval(0.0, 1.0, n);
    auto shared = std::make_shared<const Eigen::MatrixXd>(std::move(M));
    const bool symmetric =
        (*shared - shared->transpose()).cwiseAbs().maxCoeff() <= 1e-12 * shared->cwiseAbs().maxCoeff();

    ProblemDefinition problem(
        mesh, norm_kind, "linear",
        [shared](const Eigen::VectorXd& u) -> Eigen::VectorXd { return (*shared) * u; },
        [shared](const Eigen::VectorXd&, const Eigen::VectorXd& w) -> Eigen::VectorXd {
            return (*shared) * w;
        });
    problem.set_dense_derivative(
        [shared](const Eigen::VectorXd&) -> Eigen::MatrixXd { return *shared; });
    problem.set_closed_form([shared, norm_kind, symmetric](const Eigen::VectorXd&)
                                -> LinearOperatorHandle {
        auto handle = LinearOperatorHandle::from_dense(*shared, norm_kind);
        handle.set_symmetric(symmetric);
        return handle;
    });
    problem.set_derivative_symmetric(symmetric);
    return problem;
}

StateVector manufacture_rhs(const ProblemDefinition& problem, const StateVector& u_exact) {
    return problem.evaluate(u_exact);
}

StateVector parabolic_rhs(const ProblemDefinition& problem,
                          const std::function<double(double)>& u0,
                          const std::function<double(double, double)>& f) {
    const auto& mesh = *problem.mesh();
    if (mesh.kind() != MeshKind::SpaceTimeCylinder) {
        throw UnsupportedOperationError("parabolic_rhs: problem is not on a space-time grid");
    }
    const auto& x = mesh.axis(0).coordinates;
    const auto& t = mesh.axis(1).coordinates;
    const int nx = mesh.axis(0).size();
    const int nt = mesh.axis(1).size();
    const double dt = mesh.axis(1).spacing;
    Eigen::VectorXd F(mesh.size());
    for (int i = 0; i < nx; ++i) {
        const double base = u0(x[static_cast<std::size_t>(i)]);
        double integral = 0.0;
        F[i] = base;  // level 0: no time integral yet
        for (int lev = 1; lev < nt; ++lev) {
            // running composite trapezoid of f(x_i, .)
            integral += 0.5 * dt *
                        (f(x[static_cast<std::size_t>(i)], t[static_cast<std::size_t>(lev - 1)]) +
                         f(x[static_cast<std::size_t>(i)], t[static_cast<std::size_t>(lev)]));
            F[lev * nx + i] = base + integral;
        }
    }
    return problem.make_state(std::move(F));
}

}  // namespace glin
