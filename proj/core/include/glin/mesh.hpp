#pragma once

#include <memory>
#include <string>
#include <vector>

namespace glin {

enum class MeshKind {
    Interval,           // 1D grid on [lo, hi]
    Rectangle,          // 2D tensor grid, x fastest
    SpaceTimeCylinder,  // 1D space x time, space fastest, t starts at 0
};

std::string to_string(MeshKind kind);

/// One axis of a uniform tensor-product grid.
struct MeshAxis {
    std::vector<double> coordinates;  // strictly increasing, n >= 3
    double spacing = 0.0;

    int size() const noexcept { return static_cast<int>(coordinates.size()); }
};

/// Uniform tensor-product grid. Immutable after construction; construction
/// validates monotonicity, n >= 3 per axis and uniform spacing to 1e-12
/// relative.
class Mesh {
public:
    Mesh(MeshKind kind, std::vector<MeshAxis> axes);

    /// Interval grid with `n` equispaced nodes on [lo, hi], endpoints included.
    static std::shared_ptr<const Mesh> interval(double lo, double hi, int n);

    /// Interval grid of the `n` interior nodes of (lo, hi); spacing
    /// (hi-lo)/(n+1). Used by Dirichlet problems that eliminate boundary rows.
    static std::shared_ptr<const Mesh> interval_interior(double lo, double hi, int n);

    /// 2D grid of interior nodes of (0,1)^2, nx-by-ny, x index fastest.
    static std::shared_ptr<const Mesh> rectangle_interior(int nx, int ny);

    /// Space-time grid: nx interior space nodes of (0,1), nt time levels on
    /// [0, T] including t=0. Space index fastest.
    static std::shared_ptr<const Mesh> space_time_cylinder(int nx, double t_final, int nt);

    MeshKind kind() const noexcept { return kind_; }
    const std::vector<MeshAxis>& axes() const noexcept { return axes_; }
    const MeshAxis& axis(int i) const { return axes_.at(static_cast<std::size_t>(i)); }

    /// Total node count (product over axes).
    int size() const noexcept { return size_; }

    /// Volume of one grid cell (product of spacings); the weight of the
    /// discrete L2 norm.
    double cell_volume() const noexcept { return cell_volume_; }

private:
    MeshKind kind_;
    std::vector<MeshAxis> axes_;
    int size_ = 0;
    double cell_volume_ = 1.0;
};

}  // namespace glin
