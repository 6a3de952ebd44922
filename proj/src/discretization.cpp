#include "fpsi/discretization.hpp"

#include "fpsi/errors.hpp"

namespace fpsi {

Discretization::Discretization(const Scenario& s, std::shared_ptr<const Mesh2D> f, std::shared_ptr<const Mesh2D> p)
    : scenario(s),
      mesh_f(std::move(f)),
      mesh_p(std::move(p)),
      pairing(pair_interface(*mesh_f, *mesh_p)),
      vf(mesh_f, ElementKind::P2_vector, s.fluid_velocity_bc),
      qf(mesh_f, ElementKind::P1_scalar),
      vp(mesh_p, ElementKind::P2_vector, s.poro_displacement_bc),
      bp(mesh_p, ElementKind::P1_scalar),
      pp(mesh_p, ElementKind::P2_scalar, s.poro_pressure_bc) {}

std::shared_ptr<const Discretization> Discretization::build(const Scenario& s, Execution exec) {
    s.validate();
    auto mf = std::make_shared<const Mesh2D>(build_rect_mesh(s.fluid.rect, s.h, s.fluid.tags));
    auto mp = std::make_shared<const Mesh2D>(build_rect_mesh(s.poro.rect, s.h, s.poro.tags));
    std::shared_ptr<Discretization> d(new Discretization(s, mf, mp));
    const PhysicalParams& prm = s.params;
    d->c_bjs = prm.c_bjs(d->pairing.tau);

    const BoundaryLocus gamma{BoundaryTag::interface};
    FluidMatrices& fl = d->fluid;
    fl.mass = assemble(FormKind::mass, d->vf, d->vf, 1.0, VolumeLocus{}, exec);
    fl.eps = assemble(FormKind::stiffness_eps, d->vf, d->vf, 1.0, VolumeLocus{}, exec);
    fl.div = assemble(FormKind::divergence, d->vf, d->qf, 1.0, VolumeLocus{}, exec);
    fl.p1_mass = assemble(FormKind::mass, d->qf, d->qf, 1.0, VolumeLocus{}, exec);
    fl.gamma_n = assemble(FormKind::boundary_mass_normal, d->vf, d->vf, 1.0, gamma);
    fl.gamma_t = assemble(FormKind::boundary_mass_tangent, d->vf, d->vf, 1.0, gamma);
    fl.trace_n = trace_load_matrix(LoadKind::boundary_load_normal, d->vf, d->pairing, Subdomain::fluid);
    fl.trace_t = trace_load_matrix(LoadKind::boundary_load_tangent, d->vf, d->pairing, Subdomain::fluid);

    PoroMatrices& po = d->poro;
    po.mass = assemble(FormKind::mass, d->vp, d->vp, 1.0, VolumeLocus{}, exec);
    po.eps = assemble(FormKind::stiffness_eps, d->vp, d->vp, 1.0, VolumeLocus{}, exec);
    po.div_div = assemble(FormKind::div_div, d->vp, d->vp, 1.0, VolumeLocus{}, exec);
    po.div_p1 = assemble(FormKind::divergence, d->vp, d->bp, 1.0, VolumeLocus{}, exec);
    po.div_p2 = assemble(FormKind::divergence, d->vp, d->pp, 1.0, VolumeLocus{}, exec);
    po.m11 = assemble(FormKind::mass, d->bp, d->bp, 1.0, VolumeLocus{}, exec);
    po.m12 = assemble(FormKind::mass, d->pp, d->bp, 1.0, VolumeLocus{}, exec);
    po.m21 = assemble(FormKind::mass, d->bp, d->pp, 1.0, VolumeLocus{}, exec);
    po.m22 = assemble(FormKind::mass, d->pp, d->pp, 1.0, VolumeLocus{}, exec);
    po.darcy = assemble(FormKind::permeability_stiffness, d->pp, d->pp, Mat2(prm.K / prm.mu_f), VolumeLocus{}, exec);
    po.gamma_n = assemble(FormKind::boundary_mass_normal, d->vp, d->vp, 1.0, gamma);
    po.gamma_t = assemble(FormKind::boundary_mass_tangent, d->vp, d->vp, 1.0, gamma);
    po.gamma_s = assemble(FormKind::boundary_mass_scalar, d->pp, d->pp, 1.0, gamma);
    po.trace_n = trace_load_matrix(LoadKind::boundary_load_normal, d->vp, d->pairing, Subdomain::poro);
    po.trace_t = trace_load_matrix(LoadKind::boundary_load_tangent, d->vp, d->pairing, Subdomain::poro);
    po.trace_s = trace_load_matrix(LoadKind::boundary_load_scalar, d->pp, d->pairing, Subdomain::poro);

    d->trace_mass = interface_trace_mass(d->pairing);
    return d;
}

Eigen::VectorXd interpolate_at(const FeSpace& space, const VectorData& f, double t) {
    if (!f) return Eigen::VectorXd::Zero(space.dof_count());
    return space.interpolate([&](const Vec2& x) { return f(t, x); });
}

Eigen::VectorXd interpolate_at(const FeSpace& space, const ScalarData& f, double t) {
    if (!f) return Eigen::VectorXd::Zero(space.dof_count());
    return space.interpolate([&](const Vec2& x) { return f(t, x); });
}

Eigen::VectorXd load_at(const FeSpace& space, const VectorData& f, double t) {
    if (!f) return Eigen::VectorXd::Zero(space.dof_count());
    return assemble_vector(space, VectorFn([&](const Vec2& x) { return f(t, x); }));
}

Eigen::VectorXd load_at(const FeSpace& space, const ScalarData& f, double t) {
    if (!f) return Eigen::VectorXd::Zero(space.dof_count());
    return assemble_vector(space, ScalarFn([&](const Vec2& x) { return f(t, x); }));
}

Eigen::VectorXd traction_load(const FeSpace& space, const std::vector<NormalTraction>& tractions, double t) {
    Eigen::VectorXd out = Eigen::VectorXd::Zero(space.dof_count());
    for (const auto& tr : tractions) {
        const double v = tr.value(t);
        if (v == 0.0) continue;
        out += assemble_vector(LoadKind::boundary_load_normal, space, tr.tag, [v](const Vec2&) { return v; });
    }
    return out;
}

Eigen::VectorXd interface_source_nodes(const Discretization& d, double t) {
    Eigen::VectorXd g = Eigen::VectorXd::Zero(d.pairing.node_count());
    const auto& src = d.scenario.forcing.interface_source;
    if (!src) return g;
    for (int i = 0; i < d.pairing.node_count(); ++i) g[i] = src(t, d.pairing.nodes[i].x);
    return g;
}

}  // namespace fpsi
