#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <type_traits>
#include <vector>

#include <Eigen/Core>

#include "fpsi/basis.hpp"
#include "fpsi/mesh.hpp"

namespace fpsi {

enum class ComponentMask : std::uint8_t { none = 0, x = 1, y = 2, all = 3 };

inline bool has_component(ComponentMask m, int c) { return (static_cast<int>(m) >> c) & 1; }

/// Essential condition on the edges carrying `tag` (components ignored for scalars).
struct DirichletSpec {
    BoundaryTag tag;
    ComponentMask components = ComponentMask::all;
};

/// Degree-of-freedom map of a Lagrange space on a Mesh2D.
///
/// Scalar nodes: vertices first, then edge midpoints (P2). Vector spaces are
/// component-blocked: dof = component * scalar_dof_count() + node.
class FeSpace {
public:
    FeSpace(std::shared_ptr<const Mesh2D> mesh, ElementKind kind, std::vector<DirichletSpec> dirichlet = {});

    const Mesh2D& mesh() const { return *mesh_; }
    const std::shared_ptr<const Mesh2D>& mesh_ptr() const { return mesh_; }
    ElementKind kind() const { return kind_; }
    int degree() const { return polynomial_degree(kind_); }
    int components() const { return kind_ == ElementKind::P2_vector ? 2 : 1; }
    bool is_vector() const { return components() == 2; }
    int scalar_dof_count() const { return scalar_count_; }
    int dof_count() const { return scalar_count_ * components(); }
    int local_node_count() const { return fpsi::local_node_count(kind_); }
    int local_dof_count() const { return local_node_count() * components(); }

    int dof(int node, int component) const { return component * scalar_count_ + node; }

    /// Coordinates of scalar node `node`.
    const Vec2& node_coord(int node) const { return node_coords_[static_cast<std::size_t>(node)]; }
    /// Per-dof coordinates (length dof_count()).
    std::vector<Vec2> dof_coords() const;
    const std::vector<std::uint8_t>& dirichlet_mask() const { return mask_; }
    const std::vector<DirichletSpec>& dirichlet_specs() const { return specs_; }

    /// Scalar node ids of triangle `tri` in reference-element order.
    std::array<int, 6> cell_nodes(int tri) const;
    /// Scalar node ids of an edge (start, end[, midpoint]) for vertices a -> b.
    std::array<int, 3> edge_nodes(int a, int b, int edge) const;

    /// Nodal interpolant of a scalar (or, for vector spaces, a Vec2-valued) function.
    template <class F>
    Eigen::VectorXd interpolate(F&& f) const {
        Eigen::VectorXd out(dof_count());
        for (int i = 0; i < scalar_count_; ++i) {
            if constexpr (std::is_convertible_v<decltype(f(node_coords_[0])), double>) {
                out[i] = f(node_coords_[static_cast<std::size_t>(i)]);
            } else {
                const Vec2 v = f(node_coords_[static_cast<std::size_t>(i)]);
                out[i] = v.x();
                if (is_vector()) out[scalar_count_ + i] = v.y();
            }
        }
        return out;
    }

    /// Locates the triangle containing p and its reference coordinates.
    std::pair<int, Vec2> locate(const Vec2& p) const;

    double evaluate(const Eigen::VectorXd& coeffs, const Vec2& p, int component = 0) const;
    Vec2 evaluate_vector(const Eigen::VectorXd& coeffs, const Vec2& p) const;
    Vec2 evaluate_gradient(const Eigen::VectorXd& coeffs, const Vec2& p, int component = 0) const;

private:
    std::shared_ptr<const Mesh2D> mesh_;
    ElementKind kind_;
    std::vector<DirichletSpec> specs_;
    int scalar_count_ = 0;
    std::vector<Vec2> node_coords_;
    std::vector<std::uint8_t> mask_;
};

/// Affine map data of one triangle.
struct CellGeometry {
    Vec2 origin;
    Mat2 jacobian;      // columns p1 - p0, p2 - p0
    Mat2 inverse_t;     // J^{-T}
    double det = 0.0;   // 2 * area

    static CellGeometry of(const Mesh2D& mesh, int tri);
    Vec2 map(const Vec2& ref) const { return origin + jacobian * ref; }
};

}  // namespace fpsi
