#include "glin/operator.hpp"

#include "glin/errors.hpp"

namespace glin {

LinearOperatorHandle::LinearOperatorHandle(int dim, ApplyFn apply, NormKind norm_kind)
    : dim_(dim), apply_(std::move(apply)), norm_kind_(norm_kind) {
    if (dim_ <= 0) {
        throw InvalidArgumentError("LinearOperatorHandle: non-positive dimension");
    }
    if (!apply_) {
        throw InvalidArgumentError("LinearOperatorHandle: missing application contract");
    }
}

LinearOperatorHandle LinearOperatorHandle::from_dense(Eigen::MatrixXd matrix, NormKind norm_kind) {
    if (matrix.rows() != matrix.cols()) {
        throw DimensionError("LinearOperatorHandle: dense realization must be square");
    }
    auto shared = std::make_shared<const Eigen::MatrixXd>(std::move(matrix));
    LinearOperatorHandle handle(
        static_cast<int>(shared->rows()),
        [shared](const Eigen::VectorXd& w) -> Eigen::VectorXd { return (*shared) * w; },
        norm_kind);
    handle.adjoint_ = [shared](const Eigen::VectorXd& w) -> Eigen::VectorXd {
        return shared->transpose() * w;
    };
    handle.dense_ = shared;
    return handle;
}

LinearOperatorHandle LinearOperatorHandle::identity(int dim, NormKind norm_kind) {
    auto handle = from_dense(Eigen::MatrixXd::Identity(dim, dim), norm_kind);
    handle.set_symmetric(true).set_positive_definite(true);
    return handle;
}

Eigen::VectorXd LinearOperatorHandle::apply(const Eigen::VectorXd& w) const {
    if (w.size() != dim_) {
        throw DimensionError("operator of dimension " + std::to_string(dim_) +
                             " applied to vector of size " + std::to_string(w.size()));
    }
    return apply_(w);
}

StateVector LinearOperatorHandle::apply(const StateVector& w) const {
    return w.with_values(apply(w.values()));
}

Eigen::VectorXd LinearOperatorHandle::apply_adjoint(const Eigen::VectorXd& w) const {
    if (!adjoint_) {
        throw UnsupportedOperationError("operator has no adjoint application");
    }
    if (w.size() != dim_) {
        throw DimensionError("adjoint of dimension " + std::to_string(dim_) +
                             " applied to vector of size " + std::to_string(w.size()));
    }
    return adjoint_(w);
}

const Eigen::MatrixXd& LinearOperatorHandle::dense() const {
    if (!dense_) {
        throw UnsupportedOperationError("operator has no dense realization");
    }
    return *dense_;
}

LinearOperatorHandle& LinearOperatorHandle::set_adjoint(ApplyFn adjoint) {
    adjoint_ = std::move(adjoint);
    return *this;
}

LinearOperatorHandle& LinearOperatorHandle::set_dense(Eigen::MatrixXd matrix) {
    if (matrix.rows() != dim_ || matrix.cols() != dim_) {
        throw DimensionError("dense realization size mismatch");
    }
    auto shared = std::make_shared<const Eigen::MatrixXd>(std::move(matrix));
    dense_ = shared;
    if (!adjoint_) {
        adjoint_ = [shared](const Eigen::VectorXd& w) -> Eigen::VectorXd {
            return shared->transpose() * w;
        };
    }
    return *this;
}

LinearOperatorHandle& LinearOperatorHandle::set_symmetric(bool v) {
    symmetric_ = v;
    if (v && !adjoint_) {
        auto fn = apply_;
        adjoint_ = fn;
    }
    return *this;
}

LinearOperatorHandle& LinearOperatorHandle::set_positive_definite(bool v) {
    positive_definite_ = v;
    return *this;
}

}  // namespace glin
