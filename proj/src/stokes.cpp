#include "fpsi/stokes.hpp"

#include <algorithm>

#include "fpsi/errors.hpp"

namespace fpsi {

namespace {

std::vector<std::uint8_t> concat_masks(const std::vector<std::vector<std::uint8_t>>& parts) {
    std::vector<std::uint8_t> out;
    for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
    return out;
}

// True if every boundary node of V is constrained in both components.
bool fully_constrained(const FeSpace& V) {
    const Mesh2D& m = V.mesh();
    const auto& mask = V.dirichlet_mask();
    for (const auto& be : m.boundary_edges) {
        const auto nodes = V.edge_nodes(be.v[0], be.v[1], be.edge);
        for (int k = 0; k < 3; ++k)
            for (int c = 0; c < 2; ++c)
                if (!mask[static_cast<std::size_t>(V.dof(nodes[k], c))]) return false;
    }
    return true;
}

double integral(const FeSpace& S, const Eigen::VectorXd& coeffs) {
    const Eigen::VectorXd ones = assemble_vector(S, ScalarFn([](const Vec2&) { return 1.0; }));
    return ones.dot(coeffs);
}

double integral(const FeSpace& S, const PointScalarFn& f) {
    if (!f) return 0.0;
    return assemble_vector(S, ScalarFn(f)).sum();
}

double area(const Mesh2D& m) { return m.rect.width() * m.rect.height(); }

}  // namespace

StokesOperator::StokesOperator(std::shared_ptr<const Discretization> disc) : disc_(std::move(disc)) {
    const Discretization& d = *disc_;
    const PhysicalParams& prm = d.scenario.params;
    const double dt = d.scenario.time.dt;
    BlockSystem bs({d.vf.dof_count(), d.qf.dof_count()}, {d.vf.dof_count(), d.qf.dof_count()});
    SparseMatrix a = (prm.rho_f / dt) * d.fluid.mass + (2.0 * prm.mu_f) * d.fluid.eps +
                     d.scenario.robin.L1 * d.fluid.gamma_n + d.c_bjs * d.fluid.gamma_t;
    bs.set(0, 0, a);
    bs.set(0, 1, SparseMatrix(-SparseMatrix(d.fluid.div.transpose())));
    bs.set(1, 0, d.fluid.div);
    matrix_ = flatten(bs).matrix;
    system_ = std::make_unique<ConstrainedSystem>(
        matrix_, concat_masks({d.vf.dirichlet_mask(), std::vector<std::uint8_t>(d.qf.dof_count(), 0)}));
}

Eigen::VectorXd StokesOperator::rhs(const Eigen::VectorXd& v_prev, const Eigen::VectorXd& R1,
                                    const Eigen::VectorXd& R2, double t_next) const {
    const Discretization& d = *disc_;
    const Scenario& s = d.scenario;
    const int nv = d.vf.dof_count();
    if (v_prev.size() != nv) throw InputError("previous fluid velocity has the wrong length");
    if (R1.size() != d.pairing.node_count() || R2.size() != d.pairing.node_count())
        throw InputError("Robin data length does not match the interface");
    Eigen::VectorXd b(nv + d.qf.dof_count());
    b.head(nv) = (s.params.rho_f / s.time.dt) * (d.fluid.mass * v_prev) + load_at(d.vf, s.forcing.f_f, t_next) +
                 traction_load(d.vf, s.fluid_tractions, t_next) + d.fluid.trace_n * R1 - d.fluid.trace_t * R2;
    b.tail(d.qf.dof_count()) = load_at(d.qf, s.forcing.phi_f, t_next);
    return b;
}

FluidFields StokesOperator::step(const Eigen::VectorXd& v_prev, const Eigen::VectorXd& R1, const Eigen::VectorXd& R2,
                                 double t_next) const {
    const Discretization& d = *disc_;
    const int nv = d.vf.dof_count();
    Eigen::VectorXd values = Eigen::VectorXd::Zero(system_->size());
    values.head(nv) = interpolate_at(d.vf, d.scenario.fluid_velocity_data, t_next);
    const Eigen::VectorXd x = system_->solve(rhs(v_prev, R1, R2, t_next), values);
    return {x.head(nv), x.tail(d.qf.dof_count())};
}

FluidFields stokes_step(const StokesOperator& op, const Eigen::VectorXd& v_prev, const Eigen::VectorXd& R1,
                        const Eigen::VectorXd& R2, double t_next) {
    return op.step(v_prev, R1, R2, t_next);
}

Eigen::VectorXd fluid_traction_bc(const FeSpace& space, double p, BoundaryTag tag) {
    if (tag != BoundaryTag::inlet && tag != BoundaryTag::outlet) throw InputError("traction data needs inlet or outlet");
    return assemble_vector(LoadKind::boundary_load_normal, space, tag, [p](const Vec2&) { return -p; });
}

FluidFields stokes_projection(const FeSpace& V, const FeSpace& Q, double mu, const ProjectionData& data) {
    const int nv = V.dof_count(), nq = Q.dof_count();
    FluidFields out{Eigen::VectorXd::Zero(nv), Eigen::VectorXd::Zero(nq)};
    if (!data.value) return out;
    if (!data.gradient) throw InputError("Stokes projection needs the velocity gradient");

    BlockSystem bs({nv, nq}, {nv, nq});
    const SparseMatrix div = assemble(FormKind::divergence, V, Q);
    bs.set(0, 0, SparseMatrix((2.0 * mu) * assemble(FormKind::stiffness_eps, V, V)));
    bs.set(0, 1, SparseMatrix(-SparseMatrix(div.transpose())));
    bs.set(1, 0, div);
    const auto& p = data.pressure;
    bs.rhs.head(nv) = assemble_tensor_load(V, [&](const Vec2& x) {
        const Mat2 g = data.gradient(x);
        return Mat2(mu * (g + g.transpose()) - (p ? p(x) : 0.0) * Mat2::Identity());
    });
    bs.rhs.tail(nq) = assemble_vector(Q, ScalarFn([&](const Vec2& x) { return data.gradient(x).trace(); }));

    std::vector<std::uint8_t> mask = concat_masks({V.dirichlet_mask(), std::vector<std::uint8_t>(nq, 0)});
    const bool pin = fully_constrained(V);
    if (pin) mask[static_cast<std::size_t>(nv)] = 1;
    Eigen::VectorXd values = Eigen::VectorXd::Zero(nv + nq);
    values.head(nv) = V.interpolate(data.value);
    const FlatSystem flat = flatten(bs);
    const ConstrainedSystem sys(flat.matrix, mask);
    const Eigen::VectorXd x = sys.solve(flat.rhs, values);
    out.v = x.head(nv);
    out.p = x.tail(nq);
    if (pin) out.p.array() += (integral(Q, p) - integral(Q, out.p)) / area(Q.mesh());
    return out;
}

Eigen::VectorXd ritz_projection(const FeSpace& P, const Mat2& K, const PointScalarFn& value, const PointVectorFn& gradient) {
    const int n = P.dof_count();
    if (!value) return Eigen::VectorXd::Zero(n);
    if (!gradient) throw InputError("Ritz projection needs the gradient");
    const SparseMatrix a = assemble(FormKind::permeability_stiffness, P, P, K);
    const Eigen::VectorXd b = assemble_gradient_load(P, [&](const Vec2& x) { return Vec2(K * gradient(x)); });
    std::vector<std::uint8_t> mask = P.dirichlet_mask();
    const bool neumann = std::find(mask.begin(), mask.end(), 1) == mask.end();
    if (neumann) mask[0] = 1;
    Eigen::VectorXd values = P.interpolate(value);
    if (neumann) values[0] = 0.0;
    const ConstrainedSystem sys(a, mask);
    Eigen::VectorXd x = sys.solve(b, values);
    if (neumann) x.array() += (integral(P, value) - integral(P, x)) / area(P.mesh());
    return x;
}

}  // namespace fpsi
