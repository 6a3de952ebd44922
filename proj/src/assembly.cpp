#include "fpsi/assembly.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "fpsi/errors.hpp"
#include "fpsi/quadrature.hpp"

namespace fpsi {

namespace {

constexpr int kLoadDegree = 6;

bool is_edge_form(FormKind f) {
    switch (f) {
        case FormKind::boundary_mass_normal:
        case FormKind::boundary_mass_tangent:
        case FormKind::boundary_mass_scalar:
        case FormKind::interface_normal_scalar:
        case FormKind::interface_tangent_tangent: return true;
        default: return false;
    }
}

// Basis values and reference gradients at every point of a rule.
struct BasisTable {
    int nodes = 0;
    std::vector<BasisValues> at;

    BasisTable(ElementKind kind, const QuadratureRule& rule) : nodes(local_node_count(kind)) {
        at.reserve(rule.size());
        for (const auto& p : rule.points) at.push_back(reference_basis(kind, p));
    }
};

Mat2 tensor_of(const Coefficient& c) {
    if (const double* s = std::get_if<double>(&c)) return *s * Mat2::Identity();
    return std::get<Mat2>(c);
}

double scalar_of(const Coefficient& c, FormKind form) {
    if (const double* s = std::get_if<double>(&c)) return *s;
    if (form != FormKind::permeability_stiffness) throw InputError("tensor coefficient only valid for permeability_stiffness");
    return 0.0;
}

void check_coefficient(const Coefficient& c) {
    const Mat2 k = tensor_of(c);
    if (!k.allFinite()) throw InputError("coefficient is not finite");
}

void check_volume_roles(FormKind form, const FeSpace& trial, const FeSpace& test) {
    if (trial.mesh_ptr() != test.mesh_ptr() && &trial.mesh() != &test.mesh())
        throw InputError("volume forms need both spaces on the same mesh");
    auto need = [&](bool ok, const char* what) {
        if (!ok) throw InputError(std::string("form/space mismatch: ") + what);
    };
    switch (form) {
        case FormKind::mass:
        case FormKind::stiffness_grad: need(trial.is_vector() == test.is_vector(), "mass/stiffness need like spaces"); break;
        case FormKind::stiffness_eps:
        case FormKind::div_div: need(trial.is_vector() && test.is_vector(), "vector spaces required"); break;
        case FormKind::divergence: need(trial.is_vector() && !test.is_vector(), "trial vector, test scalar"); break;
        case FormKind::permeability_stiffness: need(!trial.is_vector() && !test.is_vector(), "scalar spaces required"); break;
        default: need(false, "not a volume form");
    }
}

// Local matrix of one triangle, laid out [test local dof][trial local dof]
// with local dof = component * nodes + node.
void element_matrix(FormKind form, const FeSpace& trial, const FeSpace& test, const Coefficient& coef,
                    const QuadratureRule& rule, const BasisTable& tr, const BasisTable& te, const CellGeometry& g,
                    Eigen::MatrixXd& out) {
    const int nr = tr.nodes, nt = te.nodes;
    const int cr = trial.components(), ct = test.components();
    out.setZero(nt * ct, nr * cr);
    const double s = scalar_of(coef, form);
    const Mat2 k = tensor_of(coef);
    const double jac = std::abs(g.det);
    std::array<Vec2, 6> gr, gt;
    for (std::size_t q = 0; q < rule.size(); ++q) {
        const double w = rule.weights[q] * jac;
        const auto& br = tr.at[q];
        const auto& bt = te.at[q];
        for (int a = 0; a < nr; ++a) gr[a] = g.inverse_t * br.gradients[a];
        for (int b = 0; b < nt; ++b) gt[b] = g.inverse_t * bt.gradients[b];
        switch (form) {
            case FormKind::mass:
                for (int c = 0; c < ct; ++c)
                    for (int i = 0; i < nt; ++i)
                        for (int j = 0; j < nr; ++j) out(c * nt + i, c * nr + j) += w * s * bt.values[i] * br.values[j];
                break;
            case FormKind::stiffness_grad:
                for (int c = 0; c < ct; ++c)
                    for (int i = 0; i < nt; ++i)
                        for (int j = 0; j < nr; ++j) out(c * nt + i, c * nr + j) += w * s * gt[i].dot(gr[j]);
                break;
            case FormKind::stiffness_eps:
                for (int b = 0; b < 2; ++b)
                    for (int i = 0; i < nt; ++i)
                        for (int a = 0; a < 2; ++a)
                            for (int j = 0; j < nr; ++j) {
                                double v = gr[j][b] * gt[i][a];
                                if (a == b) v += gr[j].dot(gt[i]);
                                out(b * nt + i, a * nr + j) += w * s * 0.5 * v;
                            }
                break;
            case FormKind::divergence:
                for (int i = 0; i < nt; ++i)
                    for (int a = 0; a < 2; ++a)
                        for (int j = 0; j < nr; ++j) out(i, a * nr + j) += w * s * bt.values[i] * gr[j][a];
                break;
            case FormKind::div_div:
                for (int b = 0; b < 2; ++b)
                    for (int i = 0; i < nt; ++i)
                        for (int a = 0; a < 2; ++a)
                            for (int j = 0; j < nr; ++j) out(b * nt + i, a * nr + j) += w * s * gr[j][a] * gt[i][b];
                break;
            case FormKind::permeability_stiffness:
                for (int i = 0; i < nt; ++i)
                    for (int j = 0; j < nr; ++j) out(i, j) += w * (k * gr[j]).dot(gt[i]);
                break;
            default: break;
        }
    }
}

void scatter(const FeSpace& trial, const FeSpace& test, const std::array<int, 6>& rn, const std::array<int, 6>& tn,
             const Eigen::MatrixXd& local, std::vector<Triplet>& out) {
    const int nr = trial.local_node_count(), nt = test.local_node_count();
    for (int ct = 0; ct < test.components(); ++ct)
        for (int i = 0; i < nt; ++i) {
            const int row = test.dof(tn[i], ct);
            for (int cr = 0; cr < trial.components(); ++cr)
                for (int j = 0; j < nr; ++j) {
                    const double v = local(ct * nt + i, cr * nr + j);
                    if (v != 0.0) out.emplace_back(row, trial.dof(rn[j], cr), v);
                }
        }
}

SparseMatrix from_triplets(int rows, int cols, const std::vector<Triplet>& trips) {
    SparseMatrix m(rows, cols);
    m.setFromTriplets(trips.begin(), trips.end());
    m.makeCompressed();
    return m;
}

// Reference path: one loop, one triplet buffer.
std::vector<Triplet> volume_triplets_serial(FormKind form, const FeSpace& trial, const FeSpace& test,
                                            const Coefficient& coef) {
    const auto& rule = quadrature(QuadratureLocus::triangle, trial.degree() + test.degree() + 2);
    const BasisTable tr(trial.kind(), rule), te(test.kind(), rule);
    const Mesh2D& mesh = test.mesh();
    std::vector<Triplet> trips;
    Eigen::MatrixXd local;
    for (int t = 0; t < mesh.triangle_count(); ++t) {
        element_matrix(form, trial, test, coef, rule, tr, te, CellGeometry::of(mesh, t), local);
        scatter(trial, test, trial.cell_nodes(t), test.cell_nodes(t), local, trips);
    }
    return trips;
}

// Chunked path: per-chunk buffers concatenated in chunk order.
std::vector<Triplet> volume_triplets_parallel(FormKind form, const FeSpace& trial, const FeSpace& test,
                                              const Coefficient& coef) {
    const auto& rule = quadrature(QuadratureLocus::triangle, trial.degree() + test.degree() + 2);
    const BasisTable tr(trial.kind(), rule), te(test.kind(), rule);
    const Mesh2D& mesh = test.mesh();
    const Chunking chunks{mesh.triangle_count()};
    std::vector<std::vector<Triplet>> parts(static_cast<std::size_t>(chunks.count()));
    for_each_chunk(chunks.count(), Execution::parallel, [&](int c) {
        Eigen::MatrixXd local;
        auto& buf = parts[static_cast<std::size_t>(c)];
        for (int t = chunks.begin(c); t < chunks.end(c); ++t) {
            element_matrix(form, trial, test, coef, rule, tr, te, CellGeometry::of(mesh, t), local);
            scatter(trial, test, trial.cell_nodes(t), test.cell_nodes(t), local, buf);
        }
    });
    std::size_t total = 0;
    for (const auto& p : parts) total += p.size();
    std::vector<Triplet> trips;
    trips.reserve(total);
    for (const auto& p : parts) trips.insert(trips.end(), p.begin(), p.end());
    return trips;
}

// One side of an edge integral: scalar node ids (start, end, mid), normal, tangent.
struct EdgeSide {
    std::array<int, 3> nodes{};
    Vec2 n = Vec2::Zero();
    Vec2 tau = Vec2::Zero();
};

struct EdgePair {
    EdgeSide trial, test;
    double length = 0.0;
};

std::vector<EdgePair> boundary_edge_pairs(const FeSpace& trial, const FeSpace& test, BoundaryTag tag) {
    if (&trial.mesh() != &test.mesh()) throw InputError("boundary forms need both spaces on the same mesh");
    const Mesh2D& m = test.mesh();
    std::vector<EdgePair> out;
    for (const auto& be : m.boundary_edges) {
        if (be.tag != tag) continue;
        EdgeSide s;
        s.nodes = {be.v[0], be.v[1], m.vertex_count() + be.edge};
        s.n = outward_normal(be.side);
        s.tau = rotate90(s.n);
        out.push_back(EdgePair{s, s, (m.vertices[be.v[1]] - m.vertices[be.v[0]]).norm()});
    }
    return out;
}

void check_side_space(const FeSpace& space, const InterfacePairing& pr, Subdomain side) {
    if (pr.nodes.empty()) throw InputError("empty interface pairing");
    const int last = side_node(pr.nodes.back(), side);
    const int first = side_node(pr.nodes.front(), side);
    const int limit = space.scalar_dof_count();
    if (first >= limit || last >= limit) throw InputError("space does not live on the interface side mesh");
    const double tol = 1e-9 * std::max(1.0, space.mesh().h_max);
    if ((space.node_coord(first) - pr.nodes.front().x).norm() > tol ||
        (space.node_coord(last) - pr.nodes.back().x).norm() > tol)
        throw InputError("space does not live on the interface side mesh");
}

EdgeSide interface_side(const InterfacePairing& pr, int k, Subdomain side) {
    EdgeSide s;
    for (int m = 0; m < 3; ++m) s.nodes[m] = side_node(pr.nodes[pr.edge_nodes[k][m]], side);
    s.n = side_normal(pr, side);
    s.tau = side_tangent(pr, side);
    return s;
}

std::vector<EdgePair> interface_edge_pairs(const FeSpace& trial, const FeSpace& test, const InterfaceLocus& loc) {
    if (!loc.pairing) throw InputError("interface locus without pairing");
    const InterfacePairing& pr = *loc.pairing;
    check_side_space(trial, pr, loc.trial);
    check_side_space(test, pr, loc.test);
    std::vector<EdgePair> out;
    for (int k = 0; k < pr.edge_count(); ++k) {
        const Vec2 a = pr.nodes[pr.edge_nodes[k][0]].x, b = pr.nodes[pr.edge_nodes[k][1]].x;
        out.push_back(EdgePair{interface_side(pr, k, loc.trial), interface_side(pr, k, loc.test), (b - a).norm()});
    }
    return out;
}

std::vector<Triplet> edge_triplets(FormKind form, const FeSpace& trial, const FeSpace& test, double s,
                                   const std::vector<EdgePair>& pairs) {
    auto need = [](bool ok, const char* what) {
        if (!ok) throw InputError(std::string("form/space mismatch: ") + what);
    };
    switch (form) {
        case FormKind::boundary_mass_normal:
        case FormKind::boundary_mass_tangent:
        case FormKind::interface_tangent_tangent: need(trial.is_vector() && test.is_vector(), "vector spaces required"); break;
        case FormKind::boundary_mass_scalar: need(!trial.is_vector() && !test.is_vector(), "scalar spaces required"); break;
        case FormKind::interface_normal_scalar: need(trial.is_vector() != test.is_vector(), "one scalar, one vector space"); break;
        default: break;
    }
    const int dr = trial.degree(), dt = test.degree();
    const int nr = dr + 1, nt = dt + 1;
    const auto& rule = quadrature(QuadratureLocus::edge, dr + dt + 2);
    std::vector<Triplet> trips;
    double er[3], et[3];
    for (const auto& ep : pairs) {
        Eigen::MatrixXd local = Eigen::MatrixXd::Zero(nt * test.components(), nr * trial.components());
        for (std::size_t q = 0; q < rule.size(); ++q) {
            const double w = rule.weights[q] * ep.length * s;
            edge_basis(dr, rule.points[q].x(), er);
            edge_basis(dt, rule.points[q].x(), et);
            for (int i = 0; i < nt; ++i)
                for (int j = 0; j < nr; ++j) {
                    const double v = w * et[i] * er[j];
                    switch (form) {
                        case FormKind::boundary_mass_scalar: local(i, j) += v; break;
                        case FormKind::boundary_mass_normal:
                        case FormKind::boundary_mass_tangent:
                        case FormKind::interface_tangent_tangent: {
                            const bool normal = form == FormKind::boundary_mass_normal;
                            const Vec2 d_r = normal ? ep.trial.n : ep.trial.tau;
                            const Vec2 d_t = normal ? ep.test.n : ep.test.tau;
                            for (int b = 0; b < 2; ++b)
                                for (int a = 0; a < 2; ++a) local(b * nt + i, a * nr + j) += v * d_r[a] * d_t[b];
                            break;
                        }
                        case FormKind::interface_normal_scalar:
                            if (test.is_vector()) {
                                for (int b = 0; b < 2; ++b) local(b * nt + i, j) += v * ep.test.n[b];
                            } else {
                                for (int a = 0; a < 2; ++a) local(i, a * nr + j) += v * ep.trial.n[a];
                            }
                            break;
                        default: break;
                    }
                }
        }
        for (int ct = 0; ct < test.components(); ++ct)
            for (int i = 0; i < nt; ++i)
                for (int cr = 0; cr < trial.components(); ++cr)
                    for (int j = 0; j < nr; ++j) {
                        const double v = local(ct * nt + i, cr * nr + j);
                        if (v != 0.0) trips.emplace_back(test.dof(ep.test.nodes[i], ct), trial.dof(ep.trial.nodes[j], cr), v);
                    }
    }
    return trips;
}

template <class Accumulate>
Eigen::VectorXd volume_load(const FeSpace& space, Execution exec, Accumulate&& acc) {
    const auto& rule = quadrature(QuadratureLocus::triangle, kLoadDegree);
    const BasisTable table(space.kind(), rule);
    const Mesh2D& mesh = space.mesh();
    const Chunking chunks{mesh.triangle_count()};
    std::vector<std::vector<std::pair<int, double>>> parts(static_cast<std::size_t>(chunks.count()));
    for_each_chunk(chunks.count(), exec, [&](int c) {
        auto& buf = parts[static_cast<std::size_t>(c)];
        for (int t = chunks.begin(c); t < chunks.end(c); ++t) {
            const CellGeometry g = CellGeometry::of(mesh, t);
            acc(t, g, rule, table, buf);
        }
    });
    Eigen::VectorXd out = Eigen::VectorXd::Zero(space.dof_count());
    for (const auto& p : parts)
        for (const auto& [i, v] : p) out[i] += v;
    return out;
}

}  // namespace

Vec2 side_normal(const InterfacePairing& pr, Subdomain side) { return side == Subdomain::fluid ? pr.n_f : pr.n_p; }
Vec2 side_tangent(const InterfacePairing& pr, Subdomain side) { return side == Subdomain::fluid ? pr.tau_f() : pr.tau_p(); }
int side_node(const InterfaceNode& node, Subdomain side) { return side == Subdomain::fluid ? node.fluid_p2 : node.poro_p2; }

SparseMatrix assemble(FormKind form, const FeSpace& trial, const FeSpace& test, const Coefficient& coefficient,
                      const Locus& locus, Execution exec) {
    check_coefficient(coefficient);
    if (std::holds_alternative<VolumeLocus>(locus)) {
        if (is_edge_form(form)) throw InputError("edge form needs a boundary or interface locus");
        check_volume_roles(form, trial, test);
        const auto trips = exec == Execution::serial ? volume_triplets_serial(form, trial, test, coefficient)
                                                     : volume_triplets_parallel(form, trial, test, coefficient);
        return from_triplets(test.dof_count(), trial.dof_count(), trips);
    }
    if (!is_edge_form(form)) throw InputError("volume form given an edge locus");
    const double s = scalar_of(coefficient, form);
    std::vector<EdgePair> pairs;
    if (const auto* b = std::get_if<BoundaryLocus>(&locus)) {
        pairs = boundary_edge_pairs(trial, test, b->tag);
    } else {
        pairs = interface_edge_pairs(trial, test, std::get<InterfaceLocus>(locus));
    }
    return from_triplets(test.dof_count(), trial.dof_count(), edge_triplets(form, trial, test, s, pairs));
}

Eigen::VectorXd assemble_vector(const FeSpace& space, const ScalarFn& f, Execution exec) {
    if (space.is_vector()) throw InputError("scalar load on a vector space");
    const int nn = space.local_node_count();
    return volume_load(space, exec,
                       [&](int t, const CellGeometry& g, const QuadratureRule& rule, const BasisTable& table,
                           std::vector<std::pair<int, double>>& buf) {
                           const auto nodes = space.cell_nodes(t);
                           std::array<double, 6> loc{};
                           for (std::size_t q = 0; q < rule.size(); ++q) {
                               const double w = rule.weights[q] * std::abs(g.det) * f(g.map(rule.points[q]));
                               for (int i = 0; i < nn; ++i) loc[i] += w * table.at[q].values[i];
                           }
                           for (int i = 0; i < nn; ++i) buf.emplace_back(nodes[i], loc[i]);
                       });
}

Eigen::VectorXd assemble_vector(const FeSpace& space, const VectorFn& f, Execution exec) {
    if (!space.is_vector()) throw InputError("vector load on a scalar space");
    const int nn = space.local_node_count();
    return volume_load(space, exec,
                       [&](int t, const CellGeometry& g, const QuadratureRule& rule, const BasisTable& table,
                           std::vector<std::pair<int, double>>& buf) {
                           const auto nodes = space.cell_nodes(t);
                           std::array<Vec2, 6> loc;
                           for (auto& v : loc) v.setZero();
                           for (std::size_t q = 0; q < rule.size(); ++q) {
                               const Vec2 fw = rule.weights[q] * std::abs(g.det) * f(g.map(rule.points[q]));
                               for (int i = 0; i < nn; ++i) loc[i] += fw * table.at[q].values[i];
                           }
                           for (int c = 0; c < 2; ++c)
                               for (int i = 0; i < nn; ++i) buf.emplace_back(space.dof(nodes[i], c), loc[i][c]);
                       });
}

Eigen::VectorXd assemble_vector(LoadKind kind, const FeSpace& space, BoundaryTag tag, const ScalarFn& g) {
    if (kind == LoadKind::volume_load) throw InputError("volume_load takes no boundary tag");
    if ((kind == LoadKind::boundary_load_scalar) == space.is_vector()) throw InputError("load kind does not match space");
    const Mesh2D& m = space.mesh();
    const int deg = space.degree();
    const auto& rule = quadrature(QuadratureLocus::edge, kLoadDegree);
    Eigen::VectorXd out = Eigen::VectorXd::Zero(space.dof_count());
    double e[3];
    for (const auto& be : m.boundary_edges) {
        if (be.tag != tag) continue;
        const Vec2 a = m.vertices[be.v[0]], b = m.vertices[be.v[1]];
        const double len = (b - a).norm();
        const auto nodes = space.edge_nodes(be.v[0], be.v[1], be.edge);
        const Vec2 n = outward_normal(be.side);
        const Vec2 d = kind == LoadKind::boundary_load_normal ? n : rotate90(n);
        for (std::size_t q = 0; q < rule.size(); ++q) {
            const double sq = rule.points[q].x();
            const double w = rule.weights[q] * len * g(a + sq * (b - a));
            edge_basis(deg, sq, e);
            for (int i = 0; i <= deg; ++i) {
                if (space.is_vector()) {
                    for (int c = 0; c < 2; ++c) out[space.dof(nodes[i], c)] += w * e[i] * d[c];
                } else {
                    out[nodes[i]] += w * e[i];
                }
            }
        }
    }
    return out;
}

Eigen::VectorXd assemble_gradient_load(const FeSpace& space, const VectorFn& a) {
    if (space.is_vector()) throw InputError("gradient load needs a scalar space");
    const int nn = space.local_node_count();
    return volume_load(space, Execution::parallel,
                       [&](int t, const CellGeometry& g, const QuadratureRule& rule, const BasisTable& table,
                           std::vector<std::pair<int, double>>& buf) {
                           const auto nodes = space.cell_nodes(t);
                           std::array<double, 6> loc{};
                           for (std::size_t q = 0; q < rule.size(); ++q) {
                               const Vec2 aw = rule.weights[q] * std::abs(g.det) * a(g.map(rule.points[q]));
                               for (int i = 0; i < nn; ++i) loc[i] += aw.dot(g.inverse_t * table.at[q].gradients[i]);
                           }
                           for (int i = 0; i < nn; ++i) buf.emplace_back(nodes[i], loc[i]);
                       });
}

Eigen::VectorXd assemble_tensor_load(const FeSpace& space, const std::function<Mat2(const Vec2&)>& S) {
    if (!space.is_vector()) throw InputError("tensor load needs a vector space");
    const int nn = space.local_node_count();
    return volume_load(space, Execution::parallel,
                       [&](int t, const CellGeometry& g, const QuadratureRule& rule, const BasisTable& table,
                           std::vector<std::pair<int, double>>& buf) {
                           const auto nodes = space.cell_nodes(t);
                           std::array<Vec2, 6> loc;
                           for (auto& v : loc) v.setZero();
                           for (std::size_t q = 0; q < rule.size(); ++q) {
                               const Mat2 sw = rule.weights[q] * std::abs(g.det) * S(g.map(rule.points[q]));
                               // row a of S paired with grad of the basis function: (S grad phi)_a
                               for (int i = 0; i < nn; ++i) loc[i] += sw * (g.inverse_t * table.at[q].gradients[i]);
                           }
                           for (int c = 0; c < 2; ++c)
                               for (int i = 0; i < nn; ++i) buf.emplace_back(space.dof(nodes[i], c), loc[i][c]);
                       });
}

SparseMatrix trace_load_matrix(LoadKind kind, const FeSpace& space, const InterfacePairing& pr, Subdomain side) {
    if (kind == LoadKind::volume_load) throw InputError("trace load needs a boundary kind");
    if ((kind == LoadKind::boundary_load_scalar) == space.is_vector()) throw InputError("load kind does not match space");
    check_side_space(space, pr, side);
    const int deg = space.degree();
    const auto& rule = quadrature(QuadratureLocus::edge, 2 + deg + 2);
    const Vec2 d = kind == LoadKind::boundary_load_normal ? side_normal(pr, side) : side_tangent(pr, side);
    std::vector<Triplet> trips;
    double er[3], et[3];
    for (int k = 0; k < pr.edge_count(); ++k) {
        const auto& en = pr.edge_nodes[k];
        const EdgeSide s = interface_side(pr, k, side);
        const double len = (pr.nodes[en[1]].x - pr.nodes[en[0]].x).norm();
        double local[3][3] = {};
        for (std::size_t q = 0; q < rule.size(); ++q) {
            edge_basis(2, rule.points[q].x(), er);
            edge_basis(deg, rule.points[q].x(), et);
            for (int i = 0; i <= deg; ++i)
                for (int j = 0; j < 3; ++j) local[i][j] += rule.weights[q] * len * et[i] * er[j];
        }
        for (int i = 0; i <= deg; ++i)
            for (int j = 0; j < 3; ++j) {
                if (space.is_vector()) {
                    for (int c = 0; c < 2; ++c)
                        if (d[c] != 0.0) trips.emplace_back(space.dof(s.nodes[i], c), en[j], local[i][j] * d[c]);
                } else {
                    trips.emplace_back(s.nodes[i], en[j], local[i][j]);
                }
            }
    }
    return from_triplets(space.dof_count(), pr.node_count(), trips);
}

Eigen::VectorXd interface_trace(const FeSpace& space, const Eigen::VectorXd& coeffs, const InterfacePairing& pr,
                                Subdomain side, TraceComponent component) {
    if (space.degree() != 2) throw InputError("interface traces are taken from P2 spaces");
    if (coeffs.size() != space.dof_count()) throw InputError("coefficient length does not match space");
    if ((component == TraceComponent::scalar) == space.is_vector()) throw InputError("trace component does not match space");
    check_side_space(space, pr, side);
    const Vec2 d = component == TraceComponent::normal ? side_normal(pr, side) : side_tangent(pr, side);
    Eigen::VectorXd out(pr.node_count());
    for (int i = 0; i < pr.node_count(); ++i) {
        const int node = side_node(pr.nodes[i], side);
        out[i] = space.is_vector() ? coeffs[space.dof(node, 0)] * d.x() + coeffs[space.dof(node, 1)] * d.y() : coeffs[node];
    }
    return out;
}

SparseMatrix interface_trace_mass(const InterfacePairing& pr) {
    const auto& rule = quadrature(QuadratureLocus::edge, 6);
    std::vector<Triplet> trips;
    double e[3];
    for (int k = 0; k < pr.edge_count(); ++k) {
        const auto& en = pr.edge_nodes[k];
        const double len = (pr.nodes[en[1]].x - pr.nodes[en[0]].x).norm();
        for (std::size_t q = 0; q < rule.size(); ++q) {
            edge_basis(2, rule.points[q].x(), e);
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) trips.emplace_back(en[i], en[j], rule.weights[q] * len * e[i] * e[j]);
        }
    }
    return from_triplets(pr.node_count(), pr.node_count(), trips);
}

}  // namespace fpsi
