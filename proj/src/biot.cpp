#include "fpsi/biot.hpp"

#include "fpsi/errors.hpp"

namespace fpsi {

namespace {

SparseMatrix transposed(const SparseMatrix& m) { return SparseMatrix(m.transpose()); }

}  // namespace

BiotOperator::BiotOperator(std::shared_ptr<const Discretization> disc, BiotFormulation form)
    : disc_(std::move(disc)), form_(form) {
    const Discretization& d = *disc_;
    const PhysicalParams& prm = d.scenario.params;
    const RobinParams& rb = d.scenario.robin;
    const double dt = d.scenario.time.dt;
    const double lam = prm.lambda_p, a = prm.alpha;
    const int nv = d.vp.dof_count(), nb = d.bp.dof_count(), np = d.pp.dof_count();
    const PoroMatrices& m = d.poro;

    SparseMatrix elastic = (2.0 * prm.mu_p) * m.eps + (rb.L2 / dt) * m.gamma_n + (d.c_bjs / dt) * m.gamma_t;
    if (prm.spring != 0.0) elastic += prm.spring * m.mass;
    const SparseMatrix pressure_core = (1.0 * m.darcy) + rb.L3 * m.gamma_s;

    std::vector<std::uint8_t> mask(d.vp.dirichlet_mask());
    mask.insert(mask.end(), d.vp.dirichlet_mask().begin(), d.vp.dirichlet_mask().end());
    if (form_ == BiotFormulation::four_field) {
        BlockSystem bs({nv, nv, nb, np}, {nv, nv, nb, np});
        bs.set(0, 0, m.mass);
        bs.set(0, 1, SparseMatrix((-1.0 / dt) * m.mass));
        bs.set(1, 0, SparseMatrix((prm.rho_p / dt) * m.mass));
        bs.set(1, 1, elastic);
        bs.set(1, 2, SparseMatrix(-transposed(m.div_p1)));
        bs.set(2, 1, m.div_p1);
        bs.set(2, 2, SparseMatrix((1.0 / lam) * m.m11));
        bs.set(2, 3, SparseMatrix((-a / lam) * m.m12));
        bs.set(3, 2, SparseMatrix((-a / lam / dt) * m.m21));
        bs.set(3, 3, SparseMatrix(((prm.c0 + a * a / lam) / dt) * m.m22 + pressure_core));
        matrix_ = flatten(bs).matrix;
        mask.insert(mask.end(), static_cast<std::size_t>(nb), 0);
    } else {
        BlockSystem bs({nv, nv, np}, {nv, nv, np});
        bs.set(0, 0, m.mass);
        bs.set(0, 1, SparseMatrix((-1.0 / dt) * m.mass));
        bs.set(1, 0, SparseMatrix((prm.rho_p / dt) * m.mass));
        bs.set(1, 1, SparseMatrix(elastic + lam * m.div_div));
        bs.set(1, 2, SparseMatrix(-a * transposed(m.div_p2)));
        bs.set(2, 1, SparseMatrix((a / dt) * m.div_p2));
        bs.set(2, 2, SparseMatrix((prm.c0 / dt) * m.m22 + pressure_core));
        matrix_ = flatten(bs).matrix;
    }
    mask.insert(mask.end(), d.pp.dirichlet_mask().begin(), d.pp.dirichlet_mask().end());
    system_ = std::make_unique<ConstrainedSystem>(matrix_, std::move(mask));
    p1_mass_ = std::make_unique<SparseLu>(m.m11);
}

Eigen::VectorXd BiotOperator::rhs(const PoroFields& prev, const Eigen::VectorXd& R3, const Eigen::VectorXd& R4,
                                  const Eigen::VectorXd& R5, double t_next) const {
    const Discretization& d = *disc_;
    const Scenario& s = d.scenario;
    const PhysicalParams& prm = s.params;
    const double dt = s.time.dt;
    const int nv = d.vp.dof_count(), nb = d.bp.dof_count(), np = d.pp.dof_count();
    const int ni = d.pairing.node_count();
    if (prev.v.size() != nv || prev.u.size() != nv || prev.p.size() != np)
        throw InputError("previous poroelastic fields have the wrong length");
    if (R3.size() != ni || R4.size() != ni || R5.size() != ni) throw InputError("Robin data length does not match the interface");
    const PoroMatrices& m = d.poro;
    const bool four = form_ == BiotFormulation::four_field;
    if (four && prev.beta.size() != nb) throw InputError("previous beta has the wrong length");

    Eigen::VectorXd b = Eigen::VectorXd::Zero(matrix_.rows());
    b.segment(0, nv) = (-1.0 / dt) * (m.mass * prev.u);
    b.segment(nv, nv) = (prm.rho_p / dt) * (m.mass * prev.v) + load_at(d.vp, s.forcing.f_p, t_next) +
                        traction_load(d.vp, s.poro_tractions, t_next) + m.trace_n * R3 - m.trace_t * R4 +
                        (s.robin.L2 / dt) * (m.gamma_n * prev.u) + (d.c_bjs / dt) * (m.gamma_t * prev.u);
    Eigen::VectorXd pr = load_at(d.pp, s.forcing.phi_p, t_next) + m.trace_s * R5;
    if (!prm.gravity.isZero()) {
        const Vec2 a = prm.rho_f / prm.mu_f * (prm.K * prm.gravity);
        pr += assemble_gradient_load(d.pp, [a](const Vec2&) { return a; });
    }
    if (four) {
        const double lam = prm.lambda_p, al = prm.alpha;
        pr += ((prm.c0 + al * al / lam) / dt) * (m.m22 * prev.p) - (al / lam / dt) * (m.m21 * prev.beta);
        b.segment(2 * nv + nb, np) = pr;
    } else {
        pr += (prm.alpha / dt) * (m.div_p2 * prev.u) + (prm.c0 / dt) * (m.m22 * prev.p);
        b.segment(2 * nv, np) = pr;
    }
    return b;
}

PoroFields BiotOperator::step(const PoroFields& prev, const Eigen::VectorXd& R3, const Eigen::VectorXd& R4,
                              const Eigen::VectorXd& R5, double t_next) const {
    const Discretization& d = *disc_;
    const Scenario& s = d.scenario;
    const int nv = d.vp.dof_count(), nb = d.bp.dof_count(), np = d.pp.dof_count();
    const bool four = form_ == BiotFormulation::four_field;
    Eigen::VectorXd values = Eigen::VectorXd::Zero(matrix_.rows());
    values.segment(0, nv) = interpolate_at(d.vp, s.poro_velocity_data, t_next);
    values.segment(nv, nv) = interpolate_at(d.vp, s.poro_displacement_data, t_next);
    values.tail(np) = interpolate_at(d.pp, s.poro_pressure_data, t_next);
    const Eigen::VectorXd x = system_->solve(rhs(prev, R3, R4, R5, t_next), values);
    PoroFields out;
    out.v = x.segment(0, nv);
    out.u = x.segment(nv, nv);
    out.beta = four ? Eigen::VectorXd(x.segment(2 * nv, nb)) : Eigen::VectorXd::Zero(nb);
    out.p = x.tail(np);
    return out;
}

Eigen::VectorXd BiotOperator::consistent_beta(const Eigen::VectorXd& u, const Eigen::VectorXd& p) const {
    const Discretization& d = *disc_;
    const PhysicalParams& prm = d.scenario.params;
    // (1/lambda) M11 beta = -(div u, phi) + (alpha/lambda) M12 p
    const Eigen::VectorXd r = -(d.poro.div_p1 * u) + (prm.alpha / prm.lambda_p) * (d.poro.m12 * p);
    return prm.lambda_p * p1_mass_->solve(r);
}

PoroFields biot_step(const BiotOperator& op, const PoroFields& prev, const Eigen::VectorXd& R3,
                     const Eigen::VectorXd& R4, const Eigen::VectorXd& R5, double t_next) {
    return op.step(prev, R3, R4, R5, t_next);
}

}  // namespace fpsi
