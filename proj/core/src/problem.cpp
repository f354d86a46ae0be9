#include "glin/problem.hpp"

#include "glin/errors.hpp"

namespace glin {

ProblemDefinition::ProblemDefinition(std::shared_ptr<const Mesh> mesh, NormKind norm_kind,
                                     std::string family, ValueFn value,
                                     DerivativeFn derivative_action)
    : mesh_(std::move(mesh)),
      norm_kind_(norm_kind),
      family_(std::move(family)),
      value_(std::move(value)),
      derivative_action_(std::move(derivative_action)) {
    if (!mesh_ || !value_ || !derivative_action_) {
        throw InvalidArgumentError("ProblemDefinition: mesh and evaluators are required");
    }
    // The zero origin must be a root: A(0) = 0.
    const Eigen::VectorXd at_zero = value_(Eigen::VectorXd::Zero(mesh_->size()));
    if (norm_of(at_zero, *mesh_, norm_kind_) > 1e-13) {
        throw InvalidSpecError("problem family '" + family_ + "' violates A(0) = 0");
    }
}

void ProblemDefinition::check_mesh(const StateVector& v) const {
    if (v.size() != mesh_->size()) {
        throw DimensionError("state of size " + std::to_string(v.size()) +
                             " on a problem with " + std::to_string(mesh_->size()) + " nodes");
    }
}

StateVector ProblemDefinition::evaluate(const StateVector& u) const {
    check_mesh(u);
    return make_state(value_(u.values()));
}

StateVector ProblemDefinition::apply_derivative(const StateVector& u, const StateVector& w) const {
    check_mesh(u);
    check_mesh(w);
    return make_state(derivative_action_(u.values(), w.values()));
}

Eigen::MatrixXd ProblemDefinition::dense_derivative(const Eigen::VectorXd& u) const {
    if (!dense_derivative_) {
        throw UnsupportedOperationError("family '" + family_ + "' has no dense derivative");
    }
    return dense_derivative_(u);
}

LinearOperatorHandle ProblemDefinition::closed_form(const Eigen::VectorXd& u) const {
    if (!closed_form_) {
        throw UnsupportedOperationError("family '" + family_ +
                                        "' has no closed-form linearization");
    }
    return closed_form_(u);
}

Eigen::VectorXd ProblemDefinition::identity_remainder(const Eigen::VectorXd& u) const {
    if (!identity_remainder_) {
        throw UnsupportedOperationError("family '" + family_ +
                                        "' lacks the identity-plus-integral structure");
    }
    return identity_remainder_(u);
}

StateVector ProblemDefinition::zero_state() const { return StateVector::zero(mesh_, norm_kind_); }

StateVector ProblemDefinition::make_state(Eigen::VectorXd values) const {
    return StateVector(mesh_, std::move(values), norm_kind_);
}

ProblemDefinition& ProblemDefinition::set_dense_derivative(DenseDerivativeFn fn) {
    dense_derivative_ = std::move(fn);
    return *this;
}

ProblemDefinition& ProblemDefinition::set_closed_form(ClosedFormFn fn) {
    closed_form_ = std::move(fn);
    return *this;
}

ProblemDefinition& ProblemDefinition::set_identity_remainder(ValueFn fn) {
    identity_remainder_ = std::move(fn);
    return *this;
}

ProblemDefinition& ProblemDefinition::set_derivative_symmetric(bool v) {
    derivative_symmetric_ = v;
    return *this;
}

ProblemDefinition& ProblemDefinition::set_derivative_positive_definite(bool v) {
    derivative_positive_definite_ = v;
    return *this;
}

ProblemDefinition& ProblemDefinition::set_parameter(const std::string& key, double value) {
    parameters_[key] = value;
    return *this;
}

StateVector evaluate(const ProblemDefinition& problem, const StateVector& u) {
    return problem.evaluate(u);
}

StateVector apply_derivative(const ProblemDefinition& problem, const StateVector& u,
                             const StateVector& w) {
    return problem.apply_derivative(u, w);
}

}  // namespace glin
