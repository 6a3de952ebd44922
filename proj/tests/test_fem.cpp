#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fpsi/assembly.hpp"
#include "fpsi/errors.hpp"
#include "fpsi/quadrature.hpp"

using namespace fpsi;

namespace {

using T = BoundaryTag;

std::shared_ptr<const Mesh2D> unit_square(double h, std::array<BoundaryTag, 4> tags = {T::dirichlet_velocity, T::dirichlet_velocity,
                                                                                        T::dirichlet_velocity, T::dirichlet_velocity}) {
    return std::make_shared<Mesh2D>(build_rect_mesh(Rect{0, 1, 0, 1}, h, tags));
}

double factorial(int n) { return std::tgamma(n + 1.0); }

double dense_form(const SparseMatrix& m, const Eigen::VectorXd& a, const Eigen::VectorXd& b) { return a.dot(m * b); }

}  // namespace

TEST(Mesh, CountsAndArea) {
    const Mesh2D m = build_rect_mesh(Rect{0, 2, -1, 0}, 0.5, {T::external, T::external, T::interface, T::external});
    EXPECT_EQ(m.nx, 4);
    EXPECT_EQ(m.ny, 2);
    EXPECT_EQ(m.vertex_count(), 15);
    EXPECT_EQ(m.triangle_count(), 16);
    EXPECT_EQ(m.edge_count(), 15 + 16 - 1);
    double area = 0.0;
    for (int t = 0; t < m.triangle_count(); ++t) {
        EXPECT_GT(m.signed_area(t), 0.0);
        area += m.signed_area(t);
    }
    EXPECT_NEAR(area, 2.0, 1e-14);
    EXPECT_EQ(static_cast<int>(m.boundary_edges.size()), 2 * (4 + 2));
}

TEST(Mesh, RejectsBadInput) {
    EXPECT_THROW(build_rect_mesh(Rect{0, 0, 0, 1}, 0.1, {}), InputError);
    EXPECT_THROW(build_rect_mesh(Rect{0, 1, 0, 1}, -1.0, {}), InputError);
    EXPECT_THROW(boundary_tag_from_string("wall"), InputError);
    EXPECT_EQ(boundary_tag_from_string("interface"), T::interface);
}

TEST(Mesh, InterfacePairing) {
    const Mesh2D f = build_rect_mesh(Rect{0, 1, 0, 1}, 0.25, {T::interface, T::external, T::external, T::external});
    const Mesh2D p = build_rect_mesh(Rect{0, 1, -1, 0}, 0.25, {T::external, T::external, T::interface, T::external});
    const InterfacePairing pr = pair_interface(f, p);
    EXPECT_EQ(pr.edge_count(), 4);
    EXPECT_EQ(pr.node_count(), 9);
    EXPECT_NEAR(pr.length, 1.0, 1e-14);
    EXPECT_EQ(pr.n_f, Vec2(0, -1));
    EXPECT_EQ(pr.n_p, Vec2(0, 1));
    EXPECT_EQ(pr.tau_p(), -pr.tau_f());
    for (const auto& n : pr.nodes) {
        EXPECT_NEAR(n.x.y(), 0.0, 1e-15);
    }
    const Mesh2D coarse = build_rect_mesh(Rect{0, 1, -1, 0}, 0.5, {T::external, T::external, T::interface, T::external});
    EXPECT_THROW(pair_interface(f, coarse), IncompatibleMeshError);
}

TEST(Quadrature, TriangleExactness) {
    for (int d = 1; d <= 6; ++d) {
        const QuadratureRule& q = quadrature(QuadratureLocus::triangle, d);
        EXPECT_GE(q.degree, d);
        for (int a = 0; a <= d; ++a)
            for (int b = 0; a + b <= d; ++b) {
                double s = 0.0;
                for (std::size_t i = 0; i < q.size(); ++i)
                    s += q.weights[i] * std::pow(q.points[i].x(), a) * std::pow(q.points[i].y(), b);
                const double exact = factorial(a) * factorial(b) / factorial(a + b + 2);
                EXPECT_NEAR(s, exact, 1e-14) << "degree " << d << " monomial " << a << "," << b;
            }
    }
}

TEST(Quadrature, EdgeExactness) {
    for (int d = 1; d <= 6; ++d) {
        const QuadratureRule& q = quadrature(QuadratureLocus::edge, d);
        for (int k = 0; k <= d; ++k) {
            double s = 0.0;
            for (std::size_t i = 0; i < q.size(); ++i) s += q.weights[i] * std::pow(q.points[i].x(), k);
            EXPECT_NEAR(s, 1.0 / (k + 1), 1e-14);
        }
    }
}

TEST(Basis, NodalAndPartitionOfUnity) {
    const std::array<Vec2, 6> nodes{Vec2(0, 0), Vec2(1, 0), Vec2(0, 1), Vec2(0.5, 0), Vec2(0.5, 0.5), Vec2(0, 0.5)};
    for (ElementKind kind : {ElementKind::P1_scalar, ElementKind::P2_scalar}) {
        const int n = local_node_count(kind);
        for (int i = 0; i < n; ++i) {
            const BasisValues b = reference_basis(kind, nodes[static_cast<std::size_t>(i)]);
            for (int j = 0; j < n; ++j) EXPECT_NEAR(b.values[j], i == j ? 1.0 : 0.0, 1e-15);
        }
        const BasisValues b = reference_basis(kind, Vec2(0.2, 0.3));
        double s = 0.0;
        Vec2 g = Vec2::Zero();
        for (int j = 0; j < n; ++j) {
            s += b.values[j];
            g += b.gradients[j];
        }
        EXPECT_NEAR(s, 1.0, 1e-15);
        EXPECT_NEAR(g.norm(), 0.0, 1e-14);
    }
    double e[3];
    edge_basis(2, 0.5, e);
    EXPECT_NEAR(e[2], 1.0, 1e-15);
    EXPECT_NEAR(e[0] + e[1], 0.0, 1e-15);
}

TEST(FeSpace, QuadraticInterpolationIsExact) {
    const FeSpace V(unit_square(0.25), ElementKind::P2_scalar);
    auto f = [](const Vec2& x) { return 1.0 + 2 * x.x() - x.y() + x.x() * x.x() + 3 * x.x() * x.y() - x.y() * x.y(); };
    const Eigen::VectorXd c = V.interpolate(f);
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 50; ++k) {
        const Vec2 p(u(rng), u(rng));
        EXPECT_NEAR(V.evaluate(c, p), f(p), 1e-12);
        const Vec2 g = V.evaluate_gradient(c, p);
        EXPECT_NEAR(g.x(), 2 + 2 * p.x() + 3 * p.y(), 1e-11);
        EXPECT_NEAR(g.y(), -1 + 3 * p.x() - 2 * p.y(), 1e-11);
    }
    EXPECT_EQ(V.scalar_dof_count(), V.mesh().vertex_count() + V.mesh().edge_count());
}

TEST(FeSpace, DirichletMaskFollowsTags) {
    const auto m = unit_square(0.5, {T::dirichlet_velocity, T::external, T::external, T::external});
    const FeSpace V(m, ElementKind::P2_vector, {{T::dirichlet_velocity, ComponentMask::y}});
    int count = 0;
    for (int i = 0; i < V.scalar_dof_count(); ++i) {
        const bool bottom = std::abs(V.node_coord(i).y()) < 1e-14;
        EXPECT_EQ(V.dirichlet_mask()[V.dof(i, 0)], 0);
        EXPECT_EQ(V.dirichlet_mask()[V.dof(i, 1)], bottom ? 1 : 0);
        count += bottom;
    }
    EXPECT_EQ(count, 5);
}

TEST(Assembly, P1MassMatchesSymbolicEntries) {
    const auto m = unit_square(0.5);
    const FeSpace Q(m, ElementKind::P1_scalar);
    const SparseMatrix M = assemble(FormKind::mass, Q, Q);
    Eigen::MatrixXd hand = Eigen::MatrixXd::Zero(Q.dof_count(), Q.dof_count());
    for (int t = 0; t < m->triangle_count(); ++t) {
        const double area = m->signed_area(t);
        const auto& tri = m->triangles[static_cast<std::size_t>(t)];
        for (int i : tri)
            for (int j : tri) hand(i, j) += i == j ? area / 6 : area / 12;
    }
    EXPECT_NEAR((Eigen::MatrixXd(M) - hand).cwiseAbs().maxCoeff(), 0.0, 1e-15);
}

TEST(Assembly, FormsIntegratePolynomialsExactly) {
    const auto m = unit_square(0.25, {T::dirichlet_velocity, T::interface, T::external, T::external});
    const FeSpace P2(m, ElementKind::P2_scalar), Q(m, ElementKind::P1_scalar), V(m, ElementKind::P2_vector);

    const Eigen::VectorXd u = P2.interpolate([](const Vec2& x) { return x.x() * x.x() + x.x() * x.y(); });
    EXPECT_NEAR(dense_form(assemble(FormKind::stiffness_grad, P2, P2), u, u), 3.0, 1e-12);
    EXPECT_NEAR(Eigen::VectorXd::Ones(P2.dof_count()).dot(assemble(FormKind::mass, P2, P2) * Eigen::VectorXd::Ones(P2.dof_count())),
                1.0, 1e-13);

    Mat2 K;
    K << 2.0, 0.5, 0.5, 1.0;
    // grad u = (2x + y, x): integral of g^T K g over the unit square.
    const double kexact = 2 * (4.0 / 3 + 1 + 1.0 / 3) + 2 * 0.5 * (2.0 / 3 + 1.0 / 4) + 1.0 / 3;
    EXPECT_NEAR(dense_form(assemble(FormKind::permeability_stiffness, P2, P2, K), u, u), kexact, 1e-12);

    const Eigen::VectorXd w = V.interpolate([](const Vec2& x) { return Vec2(x.x() * x.x(), x.y()); });
    const Eigen::VectorXd one = Q.interpolate([](const Vec2&) { return 1.0; });
    EXPECT_NEAR(dense_form(assemble(FormKind::divergence, V, Q), one, w), 2.0, 1e-13);
    // div w = 2x + 1
    EXPECT_NEAR(dense_form(assemble(FormKind::div_div, V, V), w, w), 4.0 / 3 + 2 + 1, 1e-12);

    const Eigen::VectorXd shear = V.interpolate([](const Vec2& x) { return Vec2(x.y(), 0.0); });
    EXPECT_NEAR(dense_form(assemble(FormKind::stiffness_eps, V, V), shear, shear), 0.5, 1e-13);

    // v.n on the bottom side (n = (0,-1)) of v = (0, x): integral of x^2 = 1/3.
    const Eigen::VectorXd vb = V.interpolate([](const Vec2& x) { return Vec2(0.0, x.x()); });
    EXPECT_NEAR(dense_form(assemble(FormKind::boundary_mass_normal, V, V, 1.0, BoundaryLocus{T::dirichlet_velocity}), vb, vb),
                1.0 / 3, 1e-13);
    // tangent on the right side is (0, 1): v.tau = x = 1, length 1.
    EXPECT_NEAR(dense_form(assemble(FormKind::boundary_mass_tangent, V, V, 1.0, BoundaryLocus{T::interface}), vb, vb), 1.0, 1e-13);
}

TEST(Assembly, LoadVectorsIntegrateExactly) {
    const auto m = unit_square(0.25);
    const FeSpace P2(m, ElementKind::P2_scalar);
    const Eigen::VectorXd one = Eigen::VectorXd::Ones(P2.dof_count());
    const Eigen::VectorXd b = assemble_vector(P2, ScalarFn([](const Vec2& x) { return x.x() * x.y(); }));
    EXPECT_NEAR(one.dot(b), 0.25, 1e-14);
    const Eigen::VectorXd u = P2.interpolate([](const Vec2& x) { return x.x(); });
    // (a, grad x) with a = (y, 0) gives the integral of y.
    EXPECT_NEAR(u.dot(assemble_gradient_load(P2, [](const Vec2& x) { return Vec2(x.y(), 0.0); })), 0.5, 1e-14);
}

TEST(Assembly, SerialAndParallelAreBitwiseEqual) {
    const auto m = unit_square(1.0 / 16);
    const FeSpace V(m, ElementKind::P2_vector), Q(m, ElementKind::P1_scalar);
    for (FormKind f : {FormKind::mass, FormKind::stiffness_eps, FormKind::div_div}) {
        const SparseMatrix a = assemble(f, V, V, 1.0, VolumeLocus{}, Execution::serial);
        const SparseMatrix b = assemble(f, V, V, 1.0, VolumeLocus{}, Execution::parallel);
        ASSERT_EQ(a.nonZeros(), b.nonZeros());
        EXPECT_TRUE(std::equal(a.valuePtr(), a.valuePtr() + a.nonZeros(), b.valuePtr()));
        EXPECT_TRUE(std::equal(a.innerIndexPtr(), a.innerIndexPtr() + a.nonZeros(), b.innerIndexPtr()));
    }
    const SparseMatrix a = assemble(FormKind::divergence, V, Q, 1.0, VolumeLocus{}, Execution::serial);
    const SparseMatrix b = assemble(FormKind::divergence, V, Q, 1.0, VolumeLocus{}, Execution::parallel);
    EXPECT_EQ((a - b).norm(), 0.0);
}

TEST(Assembly, InterfaceTraceMassAndTraces) {
    const auto f = std::make_shared<Mesh2D>(
        build_rect_mesh(Rect{0, 1, 0, 1}, 0.25, {T::interface, T::external, T::external, T::external}));
    const auto p = std::make_shared<Mesh2D>(
        build_rect_mesh(Rect{0, 1, -1, 0}, 0.25, {T::external, T::external, T::interface, T::external}));
    const InterfacePairing pr = pair_interface(*f, *p);
    const SparseMatrix TM = interface_trace_mass(pr);
    const Eigen::VectorXd one = Eigen::VectorXd::Ones(pr.node_count());
    EXPECT_NEAR(one.dot(TM * one), 1.0, 1e-14);

    const FeSpace Vf(f, ElementKind::P2_vector), Vp(p, ElementKind::P2_vector);
    const Eigen::VectorXd vf = Vf.interpolate([](const Vec2& x) { return Vec2(x.x(), 2.0 + x.y()); });
    const Eigen::VectorXd n = interface_trace(Vf, vf, pr, Subdomain::fluid, TraceComponent::normal);
    const Eigen::VectorXd t = interface_trace(Vf, vf, pr, Subdomain::fluid, TraceComponent::tangent);
    for (int i = 0; i < pr.node_count(); ++i) {
        EXPECT_NEAR(n[i], -2.0, 1e-14);
        EXPECT_NEAR(t[i], pr.tau_f().x() * pr.nodes[static_cast<std::size_t>(i)].x.x(), 1e-14);
    }
    // <r, w.n_f> with r = 1 and w = (0, 1): integral of n_f.y = -1.
    const SparseMatrix Tn = trace_load_matrix(LoadKind::boundary_load_normal, Vf, pr, Subdomain::fluid);
    const Eigen::VectorXd wy = Vf.interpolate([](const Vec2&) { return Vec2(0.0, 1.0); });
    EXPECT_NEAR(wy.dot(Tn * one), -1.0, 1e-14);
    // cross-mesh <u.tau_p, w.tau_f> with u = w = (1, 0): tau_p = -tau_f gives -1.
    const Eigen::VectorXd ex_f = Vf.interpolate([](const Vec2&) { return Vec2(1.0, 0.0); });
    const Eigen::VectorXd ex_p = Vp.interpolate([](const Vec2&) { return Vec2(1.0, 0.0); });
    const SparseMatrix X = assemble(FormKind::interface_tangent_tangent, Vp, Vf, 1.0,
                                    InterfaceLocus{&pr, Subdomain::poro, Subdomain::fluid});
    EXPECT_NEAR(ex_f.dot(X * ex_p), -1.0, 1e-14);
}
