#pragma once

#include <Eigen/Core>
#include <memory>
#include <string>

#include "glin/mesh.hpp"

namespace glin {

enum class NormKind {
    Sup,         // max_i |v_i|
    DiscreteL2,  // (sum_i v_i^2 * cell_volume)^(1/2)
};

std::string to_string(NormKind kind);

/// A discretized field: one value per mesh node plus the norm convention of
/// the space it lives in. Values are validated to be finite at construction.
class StateVector {
public:
    StateVector(std::shared_ptr<const Mesh> mesh, Eigen::VectorXd values, NormKind norm_kind);

    /// Zero field on `mesh`.
    static StateVector zero(std::shared_ptr<const Mesh> mesh, NormKind norm_kind);

    const Eigen::VectorXd& values() const noexcept { return values_; }
    const std::shared_ptr<const Mesh>& mesh() const noexcept { return mesh_; }
    NormKind norm_kind() const noexcept { return norm_kind_; }
    int size() const noexcept { return static_cast<int>(values_.size()); }

    /// Same mesh and norm convention, different values.
    StateVector with_values(Eigen::VectorXd values) const;

    /// Norm in this state's convention. Throws InvalidStateError on
    /// non-finite entries.
    double norm() const;

private:
    std::shared_ptr<const Mesh> mesh_;
    Eigen::VectorXd values_;
    NormKind norm_kind_;
};

/// Norm of `v` in its own convention.
double norm(const StateVector& v);

/// Norm of a raw vector under `kind` on `mesh` (no finiteness check).
double norm_of(const Eigen::VectorXd& values, const Mesh& mesh, NormKind kind);

/// Throws DimensionError unless a and b share mesh size and norm convention.
void require_compatible(const StateVector& a, const StateVector& b);

}  // namespace glin
