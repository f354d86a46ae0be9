#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <random>

#include "glin/glin.hpp"

namespace testing {

inline Eigen::VectorXd random_vector(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) {
        v[i] = gauss(rng);
    }
    return v;
}

inline glin::StateVector random_state(const glin::ProblemDefinition& problem, std::uint64_t seed,
                                      double scale = 1.0) {
    return problem.make_state(scale * random_vector(problem.mesh()->size(), seed));
}

// Smooth random field: a few low sine modes with seeded amplitudes. Useful
// where white noise would make difference stencils noisy.
inline glin::StateVector smooth_state_1d(const glin::ProblemDefinition& problem,
                                         std::uint64_t seed, double scale = 1.0) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> amp(-1.0, 1.0);
    const auto& x = problem.mesh()->axis(0).coordinates;
    const int n = problem.mesh()->size();
    Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
    for (int k = 1; k <= 3; ++k) {
        const double a = amp(rng);
        for (int i = 0; i < n && i < static_cast<int>(x.size()); ++i) {
            v[i] += a * std::sin(k * 3.14159265358979323846 * x[static_cast<std::size_t>(i)]);
        }
    }
    return problem.make_state(scale * v);
}

inline double rel_error(double got, double expected) {
    return std::abs(got - expected) / std::max(1e-300, std::abs(expected));
}

}  // namespace testing
