#include "glin/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "glin/errors.hpp"

namespace glin {

QuadratureRule gauss_legendre(int m) {
    if (m < 1) {
        throw InvalidArgumentError("gauss_legendre: node count must be >= 1");
    }
    QuadratureRule rule;
    rule.nodes.resize(static_cast<std::size_t>(m));
    rule.weights.resize(static_cast<std::size_t>(m));

    // Roots of P_m on [-1, 1] by Newton iteration from the Chebyshev-like
    // initial guess, then mapped to [0, 1]. Symmetric pairs share one solve.
    const int pairs = (m + 1) / 2;
    for (int i = 0; i < pairs; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (m + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            // P_m(x) and P_m'(x) by the three-term recurrence
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= m; ++k) {
                const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = m * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) {
                break;
            }
        }
        // one more recurrence pass for the converged x
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= m; ++k) {
            const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = m * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);

        rule.nodes[static_cast<std::size_t>(i)] = 0.5 * (1.0 - x);  // descending x -> ascending t
        rule.weights[static_cast<std::size_t>(i)] = 0.5 * w;
        rule.nodes[static_cast<std::size_t>(m - 1 - i)] = 0.5 * (1.0 + x);
        rule.weights[static_cast<std::size_t>(m - 1 - i)] = 0.5 * w;
    }
    return rule;
}

}  // namespace glin
