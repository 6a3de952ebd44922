#pragma once

#include <array>
#include <cstdint>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace fpsi {

using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;

enum class BoundaryTag : std::uint8_t {
    dirichlet_velocity,
    neumann_traction,
    pressure_dirichlet,
    pressure_noflow,
    interface,
    symmetry,
    inlet,
    outlet,
    external,
};

std::string_view to_string(BoundaryTag tag);
BoundaryTag boundary_tag_from_string(std::string_view name);

/// Sides of an axis-aligned rectangle, counterclockwise from the bottom.
enum class Side : std::uint8_t { bottom = 0, right = 1, top = 2, left = 3 };

Vec2 outward_normal(Side side);

struct Rect {
    double x0 = 0.0;
    double x1 = 1.0;
    double y0 = 0.0;
    double y1 = 1.0;

    double width() const { return x1 - x0; }
    double height() const { return y1 - y0; }
};

struct Edge {
    std::array<int, 2> v;  // v[0] < v[1]
};

struct BoundaryEdge {
    std::array<int, 2> v;  // oriented counterclockwise around the domain
    int edge = -1;         // index into Mesh2D::edges
    Side side = Side::bottom;
    BoundaryTag tag = BoundaryTag::dirichlet_velocity;
};

/// Conforming triangulation of a rectangle. Immutable after construction.
struct Mesh2D {
    Rect rect;
    int nx = 0;
    int ny = 0;
    std::vector<Vec2> vertices;
    std::vector<std::array<int, 3>> triangles;      // counterclockwise
    std::vector<Edge> edges;                         // every edge, sorted by (v0, v1)
    std::vector<std::array<int, 3>> triangle_edges;  // local edges (0,1), (1,2), (2,0)
    std::vector<BoundaryEdge> boundary_edges;
    std::array<BoundaryTag, 4> side_tags{};
    double h_max = 0.0;

    int vertex_count() const { return static_cast<int>(vertices.size()); }
    int edge_count() const { return static_cast<int>(edges.size()); }
    int triangle_count() const { return static_cast<int>(triangles.size()); }
    double signed_area(int tri) const;
};

/// Structured mesh: ceil(width/h) x ceil(height/h) cells, each split along the
/// lower-left to upper-right diagonal. `side_tags` is indexed by Side.
Mesh2D build_rect_mesh(const Rect& rect, double h, const std::array<BoundaryTag, 4>& side_tags);

/// One interface node of the P2 trace, shared by both meshes.
struct InterfaceNode {
    Vec2 x;
    int fluid_p2 = -1;  // P2 scalar dof in the fluid mesh
    int poro_p2 = -1;   // P2 scalar dof in the poroelastic mesh
    int fluid_p1 = -1;  // vertex index, -1 for edge midpoints
    int poro_p1 = -1;
};

/// Matching interface edges of two meshes.
///
/// Edges and trace nodes are ordered by increasing coordinate along the
/// interface axis; `edge_nodes[k]` lists the trace nodes (start, end,
/// midpoint) of pair k in that orientation.
/// The tangent of each side is its normal rotated by +90 degrees, so the
/// poroelastic tangent is -tau.
struct InterfacePairing {
    std::vector<int> fluid_edges;  // indices into mesh_f.boundary_edges
    std::vector<int> poro_edges;   // indices into mesh_p.boundary_edges
    Vec2 n_f = Vec2::Zero();
    Vec2 n_p = Vec2::Zero();
    Vec2 tau = Vec2::Zero();
    std::vector<InterfaceNode> nodes;
    std::vector<std::array<int, 3>> edge_nodes;
    double length = 0.0;

    int node_count() const { return static_cast<int>(nodes.size()); }
    int edge_count() const { return static_cast<int>(edge_nodes.size()); }
    Vec2 tau_f() const { return tau; }
    Vec2 tau_p() const { return -tau; }
};

InterfacePairing pair_interface(const Mesh2D& mesh_f, const Mesh2D& mesh_p);

/// Rotation by +90 degrees: (x, y) -> (-y, x).
inline Vec2 rotate90(const Vec2& n) { return Vec2(-n.y(), n.x()); }

}  // namespace fpsi
