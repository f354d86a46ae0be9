#pragma once

#include <Eigen/Core>
#include <functional>
#include <memory>

#include "glin/state.hpp"

namespace glin {

/// An assembled or matrix-free linear map. Immutable after construction.
///
/// The application contract is always present. A dense realization and an
/// adjoint application are optional; norm estimation and dense solves need
/// one of them. The norm convention is inherited from the space the operator
/// acts on.
class LinearOperatorHandle {
public:
    using ApplyFn = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

    LinearOperatorHandle(int dim, ApplyFn apply, NormKind norm_kind);

    /// Wrap a dense matrix; apply/adjoint derived from it.
    static LinearOperatorHandle from_dense(Eigen::MatrixXd matrix, NormKind norm_kind);

    static LinearOperatorHandle identity(int dim, NormKind norm_kind);

    int dim() const noexcept { return dim_; }
    NormKind norm_kind() const noexcept { return norm_kind_; }

    Eigen::VectorXd apply(const Eigen::VectorXd& w) const;
    StateVector apply(const StateVector& w) const;

    bool has_adjoint() const noexcept { return static_cast<bool>(adjoint_); }
    Eigen::VectorXd apply_adjoint(const Eigen::VectorXd& w) const;

    bool has_dense() const noexcept { return static_cast<bool>(dense_); }
    const Eigen::MatrixXd& dense() const;

    bool symmetric() const noexcept { return symmetric_; }
    bool positive_definite() const noexcept { return positive_definite_; }

    LinearOperatorHandle& set_adjoint(ApplyFn adjoint);
    LinearOperatorHandle& set_dense(Eigen::MatrixXd matrix);
    LinearOperatorHandle& set_symmetric(bool v);
    LinearOperatorHandle& set_positive_definite(bool v);

private:
    int dim_ = 0;
    ApplyFn apply_;
    ApplyFn adjoint_;
    std::shared_ptr<const Eigen::MatrixXd> dense_;
    NormKind norm_kind_ = NormKind::DiscreteL2;
    bool symmetric_ = false;
    bool positive_definite_ = false;
};

}  // namespace glin
