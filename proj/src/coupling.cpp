#include "fpsi/coupling.hpp"

#include <cmath>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace fpsi {

namespace {

RobinTrace combine(const RobinTrace& a, const RobinTrace& b, double s) {
    return {a.R1 + s * b.R1, a.R2 + s * b.R2, a.R3 + s * b.R3, a.R4 + s * b.R4, a.R5 + s * b.R5};
}

[[noreturn]] void rethrow_with_step(int n) {
    const std::string prefix = "step " + std::to_string(n) + ": ";
    try {
        throw;
    } catch (const SingularSystemError& e) {
        throw SingularSystemError(prefix + e.what());
    } catch (const IterationLimitError&) {
        throw;
    } catch (const SolverError& e) {
        throw SolverError(prefix + e.what());
    }
}

}  // namespace

RobinTrace operator-(const RobinTrace& a, const RobinTrace& b) { return combine(a, b, -1.0); }

struct CoupledSolver::Monolithic {
    SparseMatrix matrix;
    std::unique_ptr<ConstrainedSystem> system;
    SparseMatrix tau_fluid_from_u;  // c <u.tau_p, w_f.tau_f>
    SparseMatrix normal_psi_from_u; // <u.n_p, psi>
    int nvf = 0, nqf = 0, nv = 0, nb = 0, np = 0;
};

CoupledSolver::CoupledSolver(const Scenario& scenario, BiotFormulation form)
    : CoupledSolver(Discretization::build(scenario), form) {}

CoupledSolver::CoupledSolver(std::shared_ptr<const Discretization> disc, BiotFormulation form)
    : disc_(std::move(disc)), stokes_(disc_), biot_(disc_, form) {}

SystemState CoupledSolver::zero_state() const {
    const Discretization& d = *disc_;
    SystemState s;
    s.v_f = Eigen::VectorXd::Zero(d.vf.dof_count());
    s.p_f = Eigen::VectorXd::Zero(d.qf.dof_count());
    s.v_p = Eigen::VectorXd::Zero(d.vp.dof_count());
    s.u_p = Eigen::VectorXd::Zero(d.vp.dof_count());
    s.beta_p = Eigen::VectorXd::Zero(d.bp.dof_count());
    s.p_p = Eigen::VectorXd::Zero(d.pp.dof_count());
    return s;
}

std::pair<SystemState, RobinTrace> CoupledSolver::initialize() const {
    const Discretization& d = *disc_;
    const Scenario& sc = d.scenario;
    const InitialData& init = sc.initial;
    SystemState s = zero_state();
    const FluidFields f = stokes_projection(d.vf, d.qf, sc.params.mu_f, {init.v_f, init.grad_v_f, init.p_f});
    s.v_f = f.v;
    s.p_f = f.p;
    s.v_p = stokes_projection(d.vp, d.bp, sc.params.mu_p, {init.v_p, init.grad_v_p, nullptr}).v;
    s.u_p = stokes_projection(d.vp, d.bp, sc.params.mu_p, {init.u_p, init.grad_u_p, nullptr}).v;
    s.p_p = ritz_projection(d.pp, sc.params.K / sc.params.mu_f, init.p_p, init.grad_p_p);
    if (biot_.formulation() == BiotFormulation::four_field) s.beta_p = biot_.consistent_beta(s.u_p, s.p_p);
    return {s, initial_robin(s)};
}

RobinTrace CoupledSolver::initial_robin(const SystemState& s0) const {
    SystemState prev = s0;
    // d_t u at level 0 is v_p^0: choose u^{-1} = u^0 - dt v_p^0.
    prev.u_p = s0.u_p - disc_->scenario.time.dt * s0.v_p;
    return update_robin(s0, prev);
}

RobinTrace CoupledSolver::update_robin(const SystemState& next, const SystemState& prev) const {
    const Discretization& d = *disc_;
    const Scenario& sc = d.scenario;
    const InterfacePairing& pr = d.pairing;
    const double dt = sc.time.dt;
    const Eigen::VectorXd du = (next.u_p - prev.u_p) / dt;
    const Eigen::VectorXd vf_n = interface_trace(d.vf, next.v_f, pr, Subdomain::fluid, TraceComponent::normal);
    const Eigen::VectorXd vf_t = interface_trace(d.vf, next.v_f, pr, Subdomain::fluid, TraceComponent::tangent);
    const Eigen::VectorXd du_n = interface_trace(d.vp, du, pr, Subdomain::poro, TraceComponent::normal);
    const Eigen::VectorXd du_t = interface_trace(d.vp, du, pr, Subdomain::poro, TraceComponent::tangent);
    const Eigen::VectorXd p = interface_trace(d.pp, next.p_p, pr, Subdomain::poro, TraceComponent::scalar);
    RobinTrace r;
    r.R1 = sc.robin.L1 * vf_n - p;
    r.R2 = d.c_bjs * du_t;
    r.R3 = sc.robin.L2 * du_n - p;
    r.R4 = d.c_bjs * vf_t;
    r.R5 = sc.robin.L3 * p + vf_n + du_n - interface_source_nodes(d, next.t);
    return r;
}

SystemState CoupledSolver::solve_subproblems(const SystemState& prev, const RobinTrace& robin, Execution exec) const {
    const double t_next = prev.t + disc_->scenario.time.dt;
    FluidFields fluid;
    PoroFields poro;
    try {
        if (exec == Execution::parallel && thread_limit() > 1) {
            std::exception_ptr fluid_error;
            {
                std::jthread worker([&] {
                    try {
                        fluid = stokes_.step(prev.v_f, robin.R1, robin.R2, t_next);
                    } catch (...) {
                        fluid_error = std::current_exception();
                    }
                });
                poro = biot_.step(prev.poro(), robin.R3, robin.R4, robin.R5, t_next);
            }
            if (fluid_error) std::rethrow_exception(fluid_error);
        } else {
            fluid = stokes_.step(prev.v_f, robin.R1, robin.R2, t_next);
            poro = biot_.step(prev.poro(), robin.R3, robin.R4, robin.R5, t_next);
        }
    } catch (const SolverError&) {
        rethrow_with_step(prev.n + 1);
    }
    SystemState next;
    next.v_f = std::move(fluid.v);
    next.p_f = std::move(fluid.p);
    next.v_p = std::move(poro.v);
    next.u_p = std::move(poro.u);
    next.beta_p = std::move(poro.beta);
    next.p_p = std::move(poro.p);
    next.t = t_next;
    next.n = prev.n + 1;
    return next;
}

std::pair<SystemState, RobinTrace> CoupledSolver::advance(const SystemState& prev, const RobinTrace& robin,
                                                          Execution exec) const {
    SystemState next = solve_subproblems(prev, robin, exec);
    RobinTrace r = update_robin(next, prev);
    return {std::move(next), std::move(r)};
}

const CoupledSolver::Monolithic& CoupledSolver::monolithic() const {
    std::lock_guard<std::mutex> lock(*mono_mutex_);
    if (!mono_) {
        if (biot_.formulation() != BiotFormulation::four_field)
            throw InputError("the monolithic solver uses the four-field formulation");
        const Discretization& d = *disc_;
        const PhysicalParams& prm = d.scenario.params;
        const double dt = d.scenario.time.dt;
        const double lam = prm.lambda_p, a = prm.alpha, c = d.c_bjs;
        auto m = std::make_shared<Monolithic>();
        m->nvf = d.vf.dof_count();
        m->nqf = d.qf.dof_count();
        m->nv = d.vp.dof_count();
        m->nb = d.bp.dof_count();
        m->np = d.pp.dof_count();
        const FluidMatrices& F = d.fluid;
        const PoroMatrices& P = d.poro;
        const InterfaceLocus ff{&d.pairing, Subdomain::fluid, Subdomain::fluid};
        const InterfaceLocus pf{&d.pairing, Subdomain::poro, Subdomain::fluid};
        const InterfaceLocus fp{&d.pairing, Subdomain::fluid, Subdomain::poro};
        const InterfaceLocus pp{&d.pairing, Subdomain::poro, Subdomain::poro};
        m->tau_fluid_from_u = assemble(FormKind::interface_tangent_tangent, d.vp, d.vf, c, pf);
        m->normal_psi_from_u = assemble(FormKind::interface_normal_scalar, d.vp, d.pp, 1.0, pp);

        BlockSystem bs({m->nvf, m->nqf, m->nv, m->nv, m->nb, m->np}, {m->nvf, m->nqf, m->nv, m->nv, m->nb, m->np});
        // fluid momentum
        bs.set(0, 0, SparseMatrix((prm.rho_f / dt) * F.mass + (2.0 * prm.mu_f) * F.eps +
                                  assemble(FormKind::interface_tangent_tangent, d.vf, d.vf, c, ff)));
        bs.set(0, 1, SparseMatrix(-SparseMatrix(F.div.transpose())));
        bs.set(0, 3, SparseMatrix((1.0 / dt) * m->tau_fluid_from_u));
        bs.set(0, 5, assemble(FormKind::interface_normal_scalar, d.pp, d.vf, 1.0, pf));
        // fluid mass
        bs.set(1, 0, F.div);
        // v_p = d_t u_p
        bs.set(2, 2, P.mass);
        bs.set(2, 3, SparseMatrix((-1.0 / dt) * P.mass));
        // poroelastic momentum
        SparseMatrix elastic = (2.0 * prm.mu_p) * P.eps +
                               (1.0 / dt) * assemble(FormKind::interface_tangent_tangent, d.vp, d.vp, c, pp);
        if (prm.spring != 0.0) elastic += prm.spring * P.mass;
        bs.set(3, 0, assemble(FormKind::interface_tangent_tangent, d.vf, d.vp, c, fp));
        bs.set(3, 2, SparseMatrix((prm.rho_p / dt) * P.mass));
        bs.set(3, 3, elastic);
        bs.set(3, 4, SparseMatrix(-SparseMatrix(P.div_p1.transpose())));
        bs.set(3, 5, assemble(FormKind::interface_normal_scalar, d.pp, d.vp, 1.0, pp));
        // total pressure constraint
        bs.set(4, 3, P.div_p1);
        bs.set(4, 4, SparseMatrix((1.0 / lam) * P.m11));
        bs.set(4, 5, SparseMatrix((-a / lam) * P.m12));
        // mass balance with interface flux
        bs.set(5, 0, SparseMatrix(-assemble(FormKind::interface_normal_scalar, d.vf, d.pp, 1.0, fp)));
        bs.set(5, 3, SparseMatrix((-1.0 / dt) * m->normal_psi_from_u));
        bs.set(5, 4, SparseMatrix((-a / lam / dt) * P.m21));
        bs.set(5, 5, SparseMatrix(((prm.c0 + a * a / lam) / dt) * P.m22 + P.darcy));
        m->matrix = flatten(bs).matrix;

        std::vector<std::uint8_t> mask(d.vf.dirichlet_mask());
        mask.insert(mask.end(), static_cast<std::size_t>(m->nqf), 0);
        mask.insert(mask.end(), d.vp.dirichlet_mask().begin(), d.vp.dirichlet_mask().end());
        mask.insert(mask.end(), d.vp.dirichlet_mask().begin(), d.vp.dirichlet_mask().end());
        mask.insert(mask.end(), static_cast<std::size_t>(m->nb), 0);
        mask.insert(mask.end(), d.pp.dirichlet_mask().begin(), d.pp.dirichlet_mask().end());
        m->system = std::make_unique<ConstrainedSystem>(m->matrix, std::move(mask));
        mono_ = m;
    }
    return *mono_;
}

const SparseMatrix& CoupledSolver::monolithic_matrix() const { return monolithic().matrix; }

SystemState CoupledSolver::monolithic_step(const SystemState& prev) const {
    const Monolithic& m = monolithic();
    const Discretization& d = *disc_;
    const Scenario& sc = d.scenario;
    const PhysicalParams& prm = sc.params;
    const double dt = sc.time.dt, t = prev.t + dt;
    const double lam = prm.lambda_p, a = prm.alpha;
    const int o1 = m.nvf, o2 = o1 + m.nqf, o3 = o2 + m.nv, o4 = o3 + m.nv, o5 = o4 + m.nb;

    Eigen::VectorXd b(m.matrix.rows());
    b.segment(0, m.nvf) = (prm.rho_f / dt) * (d.fluid.mass * prev.v_f) + load_at(d.vf, sc.forcing.f_f, t) +
                          traction_load(d.vf, sc.fluid_tractions, t) + (1.0 / dt) * (m.tau_fluid_from_u * prev.u_p);
    b.segment(o1, m.nqf) = load_at(d.qf, sc.forcing.phi_f, t);
    b.segment(o2, m.nv) = (-1.0 / dt) * (d.poro.mass * prev.u_p);
    b.segment(o3, m.nv) = (prm.rho_p / dt) * (d.poro.mass * prev.v_p) + load_at(d.vp, sc.forcing.f_p, t) +
                          traction_load(d.vp, sc.poro_tractions, t) + (d.c_bjs / dt) * (d.poro.gamma_t * prev.u_p);
    b.segment(o4, m.nb).setZero();
    Eigen::VectorXd pr = ((prm.c0 + a * a / lam) / dt) * (d.poro.m22 * prev.p_p) - (a / lam / dt) * (d.poro.m21 * prev.beta_p) +
                         load_at(d.pp, sc.forcing.phi_p, t) - (1.0 / dt) * (m.normal_psi_from_u * prev.u_p) -
                         d.poro.trace_s * interface_source_nodes(d, t);
    if (!prm.gravity.isZero()) {
        const Vec2 g = prm.rho_f / prm.mu_f * (prm.K * prm.gravity);
        pr += assemble_gradient_load(d.pp, [g](const Vec2&) { return g; });
    }
    b.segment(o5, m.np) = pr;

    Eigen::VectorXd values = Eigen::VectorXd::Zero(b.size());
    values.segment(0, m.nvf) = interpolate_at(d.vf, sc.fluid_velocity_data, t);
    values.segment(o2, m.nv) = interpolate_at(d.vp, sc.poro_velocity_data, t);
    values.segment(o3, m.nv) = interpolate_at(d.vp, sc.poro_displacement_data, t);
    values.segment(o5, m.np) = interpolate_at(d.pp, sc.poro_pressure_data, t);
    Eigen::VectorXd x;
    try {
        x = m.system->solve(b, values);
    } catch (const SolverError&) {
        rethrow_with_step(prev.n + 1);
    }
    SystemState next;
    next.v_f = x.segment(0, m.nvf);
    next.p_f = x.segment(o1, m.nqf);
    next.v_p = x.segment(o2, m.nv);
    next.u_p = x.segment(o3, m.nv);
    next.beta_p = x.segment(o4, m.nb);
    next.p_p = x.segment(o5, m.np);
    next.t = t;
    next.n = prev.n + 1;
    return next;
}

double CoupledSolver::robin_norm(const RobinTrace& r) const {
    const SparseMatrix& M = disc_->trace_mass;
    double s = 0.0;
    for (const Eigen::VectorXd* v : {&r.R1, &r.R2, &r.R3, &r.R4, &r.R5}) s += v->dot(M * *v);
    return std::sqrt(std::max(s, 0.0));
}

SubiterationResult CoupledSolver::robin_subiterate(const SystemState& prev, const RobinTrace& start, double tol,
                                                   int max_iters) const {
    if (!(tol > 0.0)) throw InputError("sub-iteration tolerance must be positive");
    if (max_iters < 1) throw InputError("sub-iteration needs at least one iteration");
    SubiterationResult res;
    RobinTrace robin = start;
    for (int k = 1; k <= max_iters; ++k) {
        SystemState next = solve_subproblems(prev, robin);
        RobinTrace updated = update_robin(next, prev);
        const double change = robin_norm(updated - robin) / std::max(robin_norm(updated), 1.0);
        res.history.push_back(change);
        res.iterations = k;
        res.state = std::move(next);
        robin = std::move(updated);
        if (change < tol) {
            res.robin = robin;
            return res;
        }
    }
    throw SubiterationLimitError("Robin sub-iteration did not converge in " + std::to_string(max_iters) + " iterations",
                                 res.history, res.state);
}

}  // namespace fpsi
