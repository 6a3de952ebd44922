#include "fpsi/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fpsi/errors.hpp"

namespace fpsi {

namespace {

constexpr std::array<std::string_view, 9> kTagNames = {
    "dirichlet_velocity", "neumann_traction", "pressure_dirichlet", "pressure_noflow", "interface",
    "symmetry",           "inlet",            "outlet",             "external",
};

int find_edge(const std::vector<Edge>& edges, int a, int b) {
    const std::array<int, 2> key{std::min(a, b), std::max(a, b)};
    auto it = std::lower_bound(edges.begin(), edges.end(), key,
                               [](const Edge& e, const std::array<int, 2>& k) { return e.v < k; });
    return static_cast<int>(it - edges.begin());
}

// Position along the interface axis; horizontal interfaces order by x.
double axis_coordinate(const Vec2& p, const Vec2& tau) {
    return std::abs(tau.x()) * p.x() + std::abs(tau.y()) * p.y();
}

}  // namespace

std::string_view to_string(BoundaryTag tag) { return kTagNames[static_cast<std::size_t>(tag)]; }

BoundaryTag boundary_tag_from_string(std::string_view name) {
    for (std::size_t i = 0; i < kTagNames.size(); ++i) {
        if (kTagNames[i] == name) return static_cast<BoundaryTag>(i);
    }
    throw InputError("unknown boundary tag '" + std::string(name) + "'");
}

Vec2 outward_normal(Side side) {
    switch (side) {
        case Side::bottom: return Vec2(0.0, -1.0);
        case Side::right: return Vec2(1.0, 0.0);
        case Side::top: return Vec2(0.0, 1.0);
        case Side::left: return Vec2(-1.0, 0.0);
    }
    return Vec2::Zero();
}

double Mesh2D::signed_area(int tri) const {
    const auto& t = triangles[static_cast<std::size_t>(tri)];
    const Vec2 a = vertices[t[1]] - vertices[t[0]];
    const Vec2 b = vertices[t[2]] - vertices[t[0]];
    return 0.5 * (a.x() * b.y() - a.y() * b.x());
}

Mesh2D build_rect_mesh(const Rect& rect, double h, const std::array<BoundaryTag, 4>& side_tags) {
    if (!(rect.width() > 0.0) || !(rect.height() > 0.0)) throw InputError("rectangle must have positive width and height");
    if (!(h > 0.0) || !std::isfinite(h)) throw InputError("mesh size h must be positive");

    Mesh2D m;
    m.rect = rect;
    m.side_tags = side_tags;
    // Guard against ceil(6.0000000001) when width/h is integral up to rounding.
    auto cells = [h](double len) { return std::max(1, static_cast<int>(std::ceil(len / h - 1e-9))); };
    m.nx = cells(rect.width());
    m.ny = cells(rect.height());
    const int nx = m.nx;
    const int ny = m.ny;
    const double dx = rect.width() / nx;
    const double dy = rect.height() / ny;

    auto vid = [nx](int i, int j) { return j * (nx + 1) + i; };
    m.vertices.reserve(static_cast<std::size_t>((nx + 1) * (ny + 1)));
    for (int j = 0; j <= ny; ++j) {
        const double y = (j == ny) ? rect.y1 : rect.y0 + j * dy;
        for (int i = 0; i <= nx; ++i) {
            const double x = (i == nx) ? rect.x1 : rect.x0 + i * dx;
            m.vertices.emplace_back(x, y);
        }
    }

    m.triangles.reserve(static_cast<std::size_t>(2 * nx * ny));
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            const int v00 = vid(i, j), v10 = vid(i + 1, j), v11 = vid(i + 1, j + 1), v01 = vid(i, j + 1);
            m.triangles.push_back({v00, v10, v11});
            m.triangles.push_back({v00, v11, v01});
        }
    }

    m.edges.reserve(m.triangles.size() * 3);
    for (const auto& t : m.triangles) {
        for (int k = 0; k < 3; ++k) {
            const int a = t[k], b = t[(k + 1) % 3];
            m.edges.push_back(Edge{{std::min(a, b), std::max(a, b)}});
        }
    }
    std::sort(m.edges.begin(), m.edges.end(), [](const Edge& a, const Edge& b) { return a.v < b.v; });
    m.edges.erase(std::unique(m.edges.begin(), m.edges.end(), [](const Edge& a, const Edge& b) { return a.v == b.v; }),
                  m.edges.end());

    m.triangle_edges.reserve(m.triangles.size());
    for (const auto& t : m.triangles) {
        m.triangle_edges.push_back(
            {find_edge(m.edges, t[0], t[1]), find_edge(m.edges, t[1], t[2]), find_edge(m.edges, t[2], t[0])});
    }

    auto add = [&](int a, int b, Side side) {
        m.boundary_edges.push_back(
            BoundaryEdge{{a, b}, find_edge(m.edges, a, b), side, side_tags[static_cast<std::size_t>(side)]});
    };
    for (int i = 0; i < nx; ++i) add(vid(i, 0), vid(i + 1, 0), Side::bottom);
    for (int j = 0; j < ny; ++j) add(vid(nx, j), vid(nx, j + 1), Side::right);
    for (int i = nx; i > 0; --i) add(vid(i, ny), vid(i - 1, ny), Side::top);
    for (int j = ny; j > 0; --j) add(vid(0, j), vid(0, j - 1), Side::left);

    for (const auto& e : m.edges) {
        m.h_max = std::max(m.h_max, (m.vertices[e.v[1]] - m.vertices[e.v[0]]).norm());
    }
    return m;
}

InterfacePairing pair_interface(const Mesh2D& mesh_f, const Mesh2D& mesh_p) {
    auto collect = [](const Mesh2D& m) {
        std::vector<int> ids;
        for (int k = 0; k < static_cast<int>(m.boundary_edges.size()); ++k) {
            if (m.boundary_edges[k].tag == BoundaryTag::interface) ids.push_back(k);
        }
        return ids;
    };
    std::vector<int> ef = collect(mesh_f);
    std::vector<int> ep = collect(mesh_p);
    if (ef.empty() || ep.empty()) throw IncompatibleMeshError("both meshes need edges tagged 'interface'");
    if (ef.size() != ep.size()) throw IncompatibleMeshError("interface edge counts differ");

    InterfacePairing pr;
    pr.n_f = outward_normal(mesh_f.boundary_edges[ef.front()].side);
    pr.n_p = outward_normal(mesh_p.boundary_edges[ep.front()].side);
    for (int k : ef) {
        if ((outward_normal(mesh_f.boundary_edges[k].side) - pr.n_f).norm() > 0.0)
            throw IncompatibleMeshError("fluid interface edges lie on more than one side");
    }
    for (int k : ep) {
        if ((outward_normal(mesh_p.boundary_edges[k].side) - pr.n_p).norm() > 0.0)
            throw IncompatibleMeshError("poroelastic interface edges lie on more than one side");
    }
    if ((pr.n_f + pr.n_p).norm() > 0.0) throw IncompatibleMeshError("interface normals are not opposite");
    pr.tau = rotate90(pr.n_f);

    auto sort_edges = [&](const Mesh2D& m, std::vector<int>& ids) {
        std::sort(ids.begin(), ids.end(), [&](int a, int b) {
            const auto& ea = m.boundary_edges[a];
            const auto& eb = m.boundary_edges[b];
            const Vec2 ma = 0.5 * (m.vertices[ea.v[0]] + m.vertices[ea.v[1]]);
            const Vec2 mb = 0.5 * (m.vertices[eb.v[0]] + m.vertices[eb.v[1]]);
            return axis_coordinate(ma, pr.tau) < axis_coordinate(mb, pr.tau);
        });
    };
    sort_edges(mesh_f, ef);
    sort_edges(mesh_p, ep);

    const double tol = 1e-12 * std::max(mesh_f.h_max, mesh_p.h_max);
    const int nvf = mesh_f.vertex_count();
    const int nvp = mesh_p.vertex_count();
    int last_vertex_node = -1;
    int last_fluid_vertex = -1;
    for (std::size_t k = 0; k < ef.size(); ++k) {
        const auto& bf = mesh_f.boundary_edges[ef[k]];
        const auto& bp = mesh_p.boundary_edges[ep[k]];
        // Orient both edges by increasing axis coordinate.
        std::array<int, 2> vf = bf.v;
        if (axis_coordinate(mesh_f.vertices[vf[0]], pr.tau) > axis_coordinate(mesh_f.vertices[vf[1]], pr.tau))
            std::swap(vf[0], vf[1]);
        std::array<int, 2> vp = bp.v;
        if (axis_coordinate(mesh_p.vertices[vp[0]], pr.tau) > axis_coordinate(mesh_p.vertices[vp[1]], pr.tau))
            std::swap(vp[0], vp[1]);
        for (int s = 0; s < 2; ++s) {
            if ((mesh_f.vertices[vf[s]] - mesh_p.vertices[vp[s]]).norm() > tol)
                throw IncompatibleMeshError("interface edge " + std::to_string(k) + " endpoints do not coincide");
        }

        std::array<int, 3> nodes{};
        if (last_fluid_vertex == vf[0]) {
            nodes[0] = last_vertex_node;
        } else {
            nodes[0] = static_cast<int>(pr.nodes.size());
            pr.nodes.push_back(InterfaceNode{mesh_f.vertices[vf[0]], vf[0], vp[0], vf[0], vp[0]});
        }
        nodes[2] = static_cast<int>(pr.nodes.size());
        pr.nodes.push_back(InterfaceNode{0.5 * (mesh_f.vertices[vf[0]] + mesh_f.vertices[vf[1]]), nvf + bf.edge,
                                         nvp + bp.edge, -1, -1});
        nodes[1] = static_cast<int>(pr.nodes.size());
        pr.nodes.push_back(InterfaceNode{mesh_f.vertices[vf[1]], vf[1], vp[1], vf[1], vp[1]});
        last_vertex_node = nodes[1];
        last_fluid_vertex = vf[1];

        pr.fluid_edges.push_back(ef[k]);
        pr.poro_edges.push_back(ep[k]);
        pr.edge_nodes.push_back(nodes);
        pr.length += (mesh_f.vertices[vf[1]] - mesh_f.vertices[vf[0]]).norm();
    }
    return pr;
}

}  // namespace fpsi
