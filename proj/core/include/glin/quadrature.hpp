#pragma once

#include <vector>

namespace glin {

/// Quadrature rule on [0, 1]: nodes in (0, 1), weights summing to 1.
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;

    int size() const noexcept { return static_cast<int>(nodes.size()); }
};

/// m-point Gauss-Legendre rule mapped to [0, 1]. Exact for polynomials of
/// degree <= 2m-1. Nodes from Newton iteration on the Legendre polynomial,
/// accurate to machine precision.
QuadratureRule gauss_legendre(int m);

}  // namespace glin
