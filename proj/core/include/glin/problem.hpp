#pragma once

#include <Eigen/Core>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>

#include "glin/operator.hpp"
#include "glin/state.hpp"

namespace glin {

/// A nonlinear problem instance: evaluators for the operator value A(u) and
/// the derivative action A'(u)w on a fixed mesh, plus optional extras a
/// family can provide (dense derivative assembly, a closed-form linearization,
/// the identity-plus-remainder split used by Picard).
///
/// Construction checks A(0) = 0 to 1e-13 in the problem norm. All evaluators
/// must be pure; instances are safe to share across threads.
class ProblemDefinition {
public:
    using ValueFn = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;
    using DerivativeFn =
        std::function<Eigen::VectorXd(const Eigen::VectorXd&, const Eigen::VectorXd&)>;
    using DenseDerivativeFn = std::function<Eigen::MatrixXd(const Eigen::VectorXd&)>;
    using ClosedFormFn = std::function<LinearOperatorHandle(const Eigen::VectorXd&)>;

    ProblemDefinition(std::shared_ptr<const Mesh> mesh, NormKind norm_kind, std::string family,
                      ValueFn value, DerivativeFn derivative_action);

    const std::shared_ptr<const Mesh>& mesh() const noexcept { return mesh_; }
    NormKind norm_kind() const noexcept { return norm_kind_; }
    const std::string& family() const noexcept { return family_; }

    /// Operator value A(u).
    StateVector evaluate(const StateVector& u) const;

    /// Derivative action A'(u)w.
    StateVector apply_derivative(const StateVector& u, const StateVector& w) const;

    bool has_dense_derivative() const noexcept { return static_cast<bool>(dense_derivative_); }
    Eigen::MatrixXd dense_derivative(const Eigen::VectorXd& u) const;

    bool has_closed_form() const noexcept { return static_cast<bool>(closed_form_); }
    LinearOperatorHandle closed_form(const Eigen::VectorXd& u) const;

    /// B(u) = A(u) - u when the family has the identity-plus-integral
    /// structure; empty otherwise.
    bool has_identity_remainder() const noexcept { return static_cast<bool>(identity_remainder_); }
    Eigen::VectorXd identity_remainder(const Eigen::VectorXd& u) const;

    /// True when A'(u) is symmetric for every u (enables CG).
    bool derivative_symmetric() const noexcept { return derivative_symmetric_; }
    /// True when the linearized operator is positive definite on the family's
    /// admissible states (declared by the factory, e.g. a positive reaction
    /// split).
    bool derivative_positive_definite() const noexcept { return derivative_positive_definite_; }

    /// Zero state of this problem's space.
    StateVector zero_state() const;
    StateVector make_state(Eigen::VectorXd values) const;

    const std::map<std::string, double>& parameters() const noexcept { return parameters_; }

    ProblemDefinition& set_dense_derivative(DenseDerivativeFn fn);
    ProblemDefinition& set_closed_form(ClosedFormFn fn);
    ProblemDefinition& set_identity_remainder(ValueFn fn);
    ProblemDefinition& set_derivative_symmetric(bool v);
    ProblemDefinition& set_derivative_positive_definite(bool v);
    ProblemDefinition& set_parameter(const std::string& key, double value);

private:
    void check_mesh(const StateVector& v) const;

    std::shared_ptr<const Mesh> mesh_;
    NormKind norm_kind_;
    std::string family_;
    ValueFn value_;
    DerivativeFn derivative_action_;
    DenseDerivativeFn dense_derivative_;
    ClosedFormFn closed_form_;
    ValueFn identity_remainder_;
    bool derivative_symmetric_ = false;
    bool derivative_positive_definite_ = false;
    std::map<std::string, double> parameters_;
};

/// Free-function spellings of the two evaluator operations.
StateVector evaluate(const ProblemDefinition& problem, const StateVector& u);
StateVector apply_derivative(const ProblemDefinition& problem, const StateVector& u,
                             const StateVector& w);

}  // namespace glin
