#include "fpsi/fe_space.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <cmath>

#include "fpsi/errors.hpp"

namespace fpsi {

CellGeometry CellGeometry::of(const Mesh2D& mesh, int tri) {
    const auto& t = mesh.triangles[static_cast<std::size_t>(tri)];
    CellGeometry g;
    g.origin = mesh.vertices[t[0]];
    g.jacobian.col(0) = mesh.vertices[t[1]] - g.origin;
    g.jacobian.col(1) = mesh.vertices[t[2]] - g.origin;
    g.det = g.jacobian.determinant();
    g.inverse_t = g.jacobian.inverse().transpose();
    return g;
}

FeSpace::FeSpace(std::shared_ptr<const Mesh2D> mesh, ElementKind kind, std::vector<DirichletSpec> dirichlet)
    : mesh_(std::move(mesh)), kind_(kind), specs_(std::move(dirichlet)) {
    if (!mesh_) throw InputError("FeSpace needs a mesh");
    const Mesh2D& m = *mesh_;
    const int nv = m.vertex_count();
    scalar_count_ = degree() == 1 ? nv : nv + m.edge_count();

    node_coords_ = m.vertices;
    if (degree() == 2) {
        node_coords_.reserve(static_cast<std::size_t>(scalar_count_));
        for (const auto& e : m.edges) node_coords_.push_back(0.5 * (m.vertices[e.v[0]] + m.vertices[e.v[1]]));
    }

    mask_.assign(static_cast<std::size_t>(dof_count()), 0);
    for (const auto& be : m.boundary_edges) {
        for (const auto& spec : specs_) {
            if (spec.tag != be.tag) continue;
            const auto nodes = edge_nodes(be.v[0], be.v[1], be.edge);
            const int nn = degree() == 1 ? 2 : 3;
            for (int c = 0; c < components(); ++c) {
                if (is_vector() && !has_component(spec.components, c)) continue;
                for (int k = 0; k < nn; ++k) mask_[static_cast<std::size_t>(dof(nodes[k], c))] = 1;
            }
        }
    }
}

std::vector<Vec2> FeSpace::dof_coords() const {
    std::vector<Vec2> out(node_coords_);
    if (is_vector()) out.insert(out.end(), node_coords_.begin(), node_coords_.end());
    return out;
}

std::array<int, 6> FeSpace::cell_nodes(int tri) const {
    const auto& t = mesh_->triangles[static_cast<std::size_t>(tri)];
    std::array<int, 6> n{t[0], t[1], t[2], -1, -1, -1};
    if (degree() == 2) {
        const auto& e = mesh_->triangle_edges[static_cast<std::size_t>(tri)];
        const int nv = mesh_->vertex_count();
        n[3] = nv + e[0];
        n[4] = nv + e[1];
        n[5] = nv + e[2];
    }
    return n;
}

std::array<int, 3> FeSpace::edge_nodes(int a, int b, int edge) const {
    return {a, b, degree() == 2 ? mesh_->vertex_count() + edge : -1};
}

std::pair<int, Vec2> FeSpace::locate(const Vec2& p) const {
    const Mesh2D& m = *mesh_;
    const double tol = 1e-12 * std::max(m.rect.width(), m.rect.height());
    if (p.x() < m.rect.x0 - tol || p.x() > m.rect.x1 + tol || p.y() < m.rect.y0 - tol || p.y() > m.rect.y1 + tol)
        throw InputError("point lies outside the mesh");
    const double fx = (p.x() - m.rect.x0) / m.rect.width() * m.nx;
    const double fy = (p.y() - m.rect.y0) / m.rect.height() * m.ny;
    const int i = std::clamp(static_cast<int>(std::floor(fx)), 0, m.nx - 1);
    const int j = std::clamp(static_cast<int>(std::floor(fy)), 0, m.ny - 1);
    const int base = 2 * (j * m.nx + i);
    int best = base;
    Vec2 best_ref;
    double best_violation = 1e300;
    for (int tri = base; tri < base + 2; ++tri) {
        const CellGeometry g = CellGeometry::of(m, tri);
        const Vec2 ref = g.jacobian.inverse() * (p - g.origin);
        const double violation = std::max({-ref.x(), -ref.y(), ref.x() + ref.y() - 1.0, 0.0});
        if (violation < best_violation) {
            best_violation = violation;
            best = tri;
            best_ref = ref;
        }
    }
    return {best, best_ref};
}

double FeSpace::evaluate(const Eigen::VectorXd& coeffs, const Vec2& p, int component) const {
    const auto [tri, ref] = locate(p);
    const BasisValues b = reference_basis(kind_, ref);
    const auto nodes = cell_nodes(tri);
    double v = 0.0;
    for (int k = 0; k < local_node_count(); ++k) v += coeffs[dof(nodes[k], component)] * b.values[k];
    return v;
}

Vec2 FeSpace::evaluate_vector(const Eigen::VectorXd& coeffs, const Vec2& p) const {
    return Vec2(evaluate(coeffs, p, 0), evaluate(coeffs, p, 1));
}

Vec2 FeSpace::evaluate_gradient(const Eigen::VectorXd& coeffs, const Vec2& p, int component) const {
    const auto [tri, ref] = locate(p);
    const CellGeometry g = CellGeometry::of(*mesh_, tri);
    const BasisValues b = reference_basis(kind_, ref);
    const auto nodes = cell_nodes(tri);
    Vec2 grad = Vec2::Zero();
    for (int k = 0; k < local_node_count(); ++k) grad += coeffs[dof(nodes[k], component)] * (g.inverse_t * b.gradients[k]);
    return grad;
}

}  // namespace fpsi
