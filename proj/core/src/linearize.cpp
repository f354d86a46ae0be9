#include "glin/linearize.hpp"

#include "glin/errors.hpp"

namespace glin {

LinearOperatorHandle linearize_by_quadrature(const ProblemDefinition& problem,
                                             const StateVector& u, const QuadratureRule& rule) {
    if (rule.size() < 1) {
        throw InvalidArgumentError("linearize_by_quadrature: empty quadrature rule");
    }
    if (u.size() != problem.mesh()->size()) {
        throw DimensionError("linearize_by_quadrature: state and problem sizes differ");
    }
    const int n = u.size();

    if (problem.has_dense_derivative()) {
        Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(n, n);
        for (int k = 0; k < rule.size(); ++k) {
            const auto idx = static_cast<std::size_t>(k);
            sum.noalias() += rule.weights[idx] * problem.dense_derivative(rule.nodes[idx] * u.values());
        }
        auto handle = LinearOperatorHandle::from_dense(std::move(sum), problem.norm_kind());
        handle.set_symmetric(problem.derivative_symmetric())
            .set_positive_definite(problem.derivative_positive_definite());
        return handle;
    }

    // Matrix-free: pre-scale the segment states once, apply on demand.
    auto base = std::make_shared<const StateVector>(u);
    auto prob = std::make_shared<const ProblemDefinition>(problem);
    auto nodes = rule.nodes;
    auto weights = rule.weights;
    LinearOperatorHandle handle(
        n,
        [prob, base, nodes, weights](const Eigen::VectorXd& w) -> Eigen::VectorXd {
            Eigen::VectorXd out = Eigen::VectorXd::Zero(w.size());
            const StateVector ws = base->with_values(w);
            for (std::size_t k = 0; k < nodes.size(); ++k) {
                const StateVector uk = base->with_values(nodes[k] * base->values());
                out += weights[k] * prob->apply_derivative(uk, ws).values();
            }
            return out;
        },
        problem.norm_kind());
    handle.set_symmetric(problem.derivative_symmetric())
        .set_positive_definite(problem.derivative_positive_definite());
    return handle;
}

LinearOperatorHandle linearize_closed_form(const ProblemDefinition& problem,
                                           const StateVector& u) {
    if (u.size() != problem.mesh()->size()) {
        throw DimensionError("linearize_closed_form: state and problem sizes differ");
    }
    return problem.closed_form(u.values());  // throws UnsupportedOperationError if absent
}

double factorization_residual(const ProblemDefinition& problem, const StateVector& u,
                              const QuadratureRule& rule) {
    const LinearOperatorHandle L = linearize_by_quadrature(problem, u, rule);
    const StateVector Au = problem.evaluate(u);
    const StateVector Lu = L.apply(u);
    const double defect = Au.with_values(Au.values() - Lu.values()).norm();
    return defect / (1.0 + Au.norm());
}

}  // namespace glin
