#include "glin/state.hpp"

#include <cmath>

#include "glin/errors.hpp"

namespace glin {

std::string to_string(NormKind kind) {
    switch (kind) {
        case NormKind::Sup: return "sup";
        case NormKind::DiscreteL2: return "discrete-l2";
    }
    return "unknown";
}

StateVector::StateVector(std::shared_ptr<const Mesh> mesh, Eigen::VectorXd values,
                         NormKind norm_kind)
    : mesh_(std::move(mesh)), values_(std::move(values)), norm_kind_(norm_kind) {
    if (!mesh_) {
        throw InvalidArgumentError("StateVector: null mesh");
    }
    if (values_.size() != mesh_->size()) {
        throw DimensionError("StateVector: " + std::to_string(values_.size()) +
                             " values on a mesh of " + std::to_string(mesh_->size()) + " nodes");
    }
    if (!values_.allFinite()) {
        throw InvalidStateError("StateVector: non-finite entries");
    }
}

StateVector StateVector::zero(std::shared_ptr<const Mesh> mesh, NormKind norm_kind) {
    const int n = mesh->size();
    return StateVector(std::move(mesh), Eigen::VectorXd::Zero(n), norm_kind);
}

StateVector StateVector::with_values(Eigen::VectorXd values) const {
    return StateVector(mesh_, std::move(values), norm_kind_);
}

double StateVector::norm() const {
    if (!values_.allFinite()) {
        throw InvalidStateError("norm: non-finite entries");
    }
    return norm_of(values_, *mesh_, norm_kind_);
}

double norm(const StateVector& v) { return v.norm(); }

double norm_of(const Eigen::VectorXd& values, const Mesh& mesh, NormKind kind) {
    switch (kind) {
        case NormKind::Sup:
            return values.size() == 0 ? 0.0 : values.cwiseAbs().maxCoeff();
        case NormKind::DiscreteL2:
            return std::sqrt(values.squaredNorm() * mesh.cell_volume());
    }
    return 0.0;
}

void require_compatible(const StateVector& a, const StateVector& b) {
    if (a.size() != b.size()) {
        throw DimensionError("states of sizes " + std::to_string(a.size()) + " and " +
                             std::to_string(b.size()));
    }
    if (a.mesh().get() != b.mesh().get() && a.mesh()->size() != b.mesh()->size()) {
        throw DimensionError("states on incompatible meshes");
    }
}

}  // namespace glin
