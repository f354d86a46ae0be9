#include "glin/mesh.hpp"

#include <cmath>

#include "glin/errors.hpp"

namespace glin {

std::string to_string(MeshKind kind) {
    switch (kind) {
        case MeshKind::Interval: return "interval";
        case MeshKind::Rectangle: return "rectangle";
        case MeshKind::SpaceTimeCylinder: return "space-time-cylinder";
    }
    return "unknown";
}

namespace {

MeshAxis uniform_axis(double lo, double hi, int n) {
    MeshAxis axis;
    axis.coordinates.resize(static_cast<std::size_t>(n));
    const double h = (hi - lo) / static_cast<double>(n - 1);
    for (int i = 0; i < n; ++i) {
        axis.coordinates[static_cast<std::size_t>(i)] = lo + h * i;
    }
    axis.spacing = h;
    return axis;
}

void validate_axis(const MeshAxis& axis) {
    const int n = axis.size();
    if (n < 3) {
        throw InvalidArgumentError("mesh axis needs at least 3 nodes, got " + std::to_string(n));
    }
    const auto& x = axis.coordinates;
    for (int i = 1; i < n; ++i) {
        const double h = x[static_cast<std::size_t>(i)] - x[static_cast<std::size_t>(i - 1)];
        if (!(h > 0.0)) {
            throw InvalidArgumentError("mesh axis coordinates must be strictly increasing");
        }
        if (std::abs(h - axis.spacing) > 1e-12 * axis.spacing) {
            throw InvalidArgumentError("mesh axis spacing is not uniform");
        }
    }
}

}  // namespace

Mesh::Mesh(MeshKind kind, std::vector<MeshAxis> axes) : kind_(kind), axes_(std::move(axes)) {
    const std::size_t expected_axes = (kind == MeshKind::Interval) ? 1u : 2u;
    if (axes_.size() != expected_axes) {
        throw InvalidArgumentError("mesh kind " + to_string(kind) + " expects " +
                                   std::to_string(expected_axes) + " axes");
    }
    size_ = 1;
    cell_volume_ = 1.0;
    for (const auto& axis : axes_) {
        validate_axis(axis);
        size_ *= axis.size();
        cell_volume_ *= axis.spacing;
    }
}

std::shared_ptr<const Mesh> Mesh::interval(double lo, double hi, int n) {
    return std::make_shared<Mesh>(MeshKind::Interval, std::vector<MeshAxis>{uniform_axis(lo, hi, n)});
}

std::shared_ptr<const Mesh> Mesh::interval_interior(double lo, double hi, int n) {
    const double h = (hi - lo) / static_cast<double>(n + 1);
    return std::make_shared<Mesh>(MeshKind::Interval,
                                  std::vector<MeshAxis>{uniform_axis(lo + h, hi - h, n)});
}

std::shared_ptr<const Mesh> Mesh::rectangle_interior(int nx, int ny) {
    const double hx = 1.0 / static_cast<double>(nx + 1);
    const double hy = 1.0 / static_cast<double>(ny + 1);
    return std::make_shared<Mesh>(
        MeshKind::Rectangle,
        std::vector<MeshAxis>{uniform_axis(hx, 1.0 - hx, nx), uniform_axis(hy, 1.0 - hy, ny)});
}

std::shared_ptr<const Mesh> Mesh::space_time_cylinder(int nx, double t_final, int nt) {
    if (!(t_final > 0.0)) {
        throw InvalidArgumentError("space_time_cylinder: t_final must be positive");
    }
    const double hx = 1.0 / static_cast<double>(nx + 1);
    return std::make_shared<Mesh>(
        MeshKind::SpaceTimeCylinder,
        std::vector<MeshAxis>{uniform_axis(hx, 1.0 - hx, nx), uniform_axis(0.0, t_final, nt)});
}

}  // namespace glin
