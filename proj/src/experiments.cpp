#include "fpsi/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "fpsi/physics/manufactured.hpp"
#include "fpsi/quadrature.hpp"

namespace fpsi {

namespace {

constexpr int kNormDegree = 6;

Mat2 sym(const Mat2& g) { return 0.5 * (g + g.transpose()); }

/// Value and physical gradients of a field at the quadrature points of one cell.
struct Sampled {
    std::vector<double> value;  // [q * components + c]
    std::vector<Mat2> grad;     // row c = gradient of component c
};

struct CellSampler {
    const FeSpace& space;
    const QuadratureRule& rule;
    std::vector<BasisValues> table;

    CellSampler(const FeSpace& s, const QuadratureRule& r) : space(s), rule(r) {
        for (const auto& p : r.points) table.push_back(reference_basis(s.kind(), p));
    }

    void sample(const Eigen::VectorXd& coeffs, int tri, const CellGeometry& g, Sampled& out) const {
        const auto nodes = space.cell_nodes(tri);
        const int nn = space.local_node_count(), nc = space.components();
        const std::size_t nq = rule.size();
        out.value.assign(nq * static_cast<std::size_t>(nc), 0.0);
        out.grad.assign(nq, Mat2::Zero());
        for (std::size_t q = 0; q < nq; ++q) {
            for (int k = 0; k < nn; ++k) {
                const Vec2 gk = g.inverse_t * table[q].gradients[static_cast<std::size_t>(k)];
                const double phi = table[q].values[static_cast<std::size_t>(k)];
                for (int c = 0; c < nc; ++c) {
                    const double a = coeffs[space.dof(nodes[static_cast<std::size_t>(k)], c)];
                    out.value[q * static_cast<std::size_t>(nc) + static_cast<std::size_t>(c)] += a * phi;
                    out.grad[q].row(c) += a * gk.transpose();
                }
            }
        }
    }
};

double quad_form(const SparseMatrix& m, const Eigen::VectorXd& a, const Eigen::VectorXd& b) { return a.dot(m * b); }

}  // namespace

ErrorReport error_norms(const Discretization& d, const SystemState& s) {
    const Scenario& sc = d.scenario;
    if (!sc.has_exact_solution) throw InputError("error norms need a scenario with a closed-form solution");
    const PhysicalParams& prm = sc.params;
    const double lam = prm.lambda_p, t = s.t;
    const QuadratureRule& rule = quadrature(QuadratureLocus::triangle, kNormDegree);

    double ev = 0.0, ep = 0.0;
    {
        const CellSampler sv(d.vf, rule), sq(d.qf, rule);
        Sampled a, b;
        for (int tri = 0; tri < d.mesh_f->triangle_count(); ++tri) {
            const CellGeometry g = CellGeometry::of(*d.mesh_f, tri);
            sv.sample(s.v_f, tri, g, a);
            sq.sample(s.p_f, tri, g, b);
            for (std::size_t q = 0; q < rule.size(); ++q) {
                const Vec2 x = g.map(rule.points[q]);
                const double w = rule.weights[q] * std::abs(g.det);
                ev += w * sym(manufactured_velocity_gradient(lam, t, x) - a.grad[q]).squaredNorm();
                const double dp = manufactured_pf(lam, t, x) - b.value[q];
                ep += w * dp * dp;
            }
        }
    }
    double eu = 0.0, ediv = 0.0, eb = 0.0, epp = 0.0;
    {
        const CellSampler su(d.vp, rule), sb(d.bp, rule), sp(d.pp, rule);
        Sampled a, b, c;
        for (int tri = 0; tri < d.mesh_p->triangle_count(); ++tri) {
            const CellGeometry g = CellGeometry::of(*d.mesh_p, tri);
            su.sample(s.u_p, tri, g, a);
            sb.sample(s.beta_p, tri, g, b);
            sp.sample(s.p_p, tri, g, c);
            for (std::size_t q = 0; q < rule.size(); ++q) {
                const Vec2 x = g.map(rule.points[q]);
                const double w = rule.weights[q] * std::abs(g.det);
                const Mat2 e = manufactured_velocity_gradient(lam, t, x) - a.grad[q];
                eu += w * sym(e).squaredNorm();
                ediv += w * e.trace() * e.trace();
                const double db = exact_solution(lam, prm.alpha, t, x).beta_p - b.value[q];
                eb += w * db * db;
                epp += w * (manufactured_pp_gradient(t, x) - c.grad[q].row(0).transpose()).squaredNorm();
            }
        }
    }
    ErrorReport r;
    r.e_vf_H1 = std::sqrt(ev);
    r.e_pf_L2 = std::sqrt(ep);
    r.e_up_H1 = std::sqrt(eu);
    r.e_eng = 2.0 * prm.mu_p * r.e_up_H1 + lam * std::sqrt(ediv);
    r.e_betap_L2 = std::sqrt(eb);
    r.e_pp_H1 = std::sqrt(epp);
    r.h = sc.h;
    r.dt = sc.time.dt;
    r.lambda_p = lam;
    return r;
}

std::vector<std::array<double, 6>> RateTable::rates() const {
    std::vector<std::array<double, 6>> out;
    for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
        const auto a = rows[i].values(), b = rows[i + 1].values();
        const double lh = std::log(rows[i].h / rows[i + 1].h);
        std::array<double, 6> r{};
        for (std::size_t k = 0; k < 6; ++k) r[k] = std::log(a[k] / b[k]) / lh;
        out.push_back(r);
    }
    return out;
}

double RateTable::min_rate(int k) const {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& r : rates()) m = std::min(m, r[static_cast<std::size_t>(k)]);
    return m;
}

std::array<double, 6> RateTable::fitted() const {
    if (rows.size() < 2) throw InputError("a rate fit needs at least two rows");
    const double n = static_cast<double>(rows.size());
    double sx = 0.0, sxx = 0.0;
    for (const auto& r : rows) {
        const double x = std::log(r.h);
        sx += x;
        sxx += x * x;
    }
    std::array<double, 6> out{};
    for (std::size_t k = 0; k < 6; ++k) {
        double sy = 0.0, sxy = 0.0;
        for (const auto& r : rows) {
            const double x = std::log(r.h), y = std::log(r.values()[k]);
            sy += y;
            sxy += x * y;
        }
        out[k] = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    }
    return out;
}

OscillationMetric OscillationMetric::of(std::vector<double> x, std::vector<double> value) {
    if (x.size() != value.size()) throw InputError("profile coordinates and values differ in length");
    OscillationMetric m;
    m.x = std::move(x);
    m.value = std::move(value);
    if (m.value.empty()) return m;
    for (std::size_t i = 1; i < m.value.size(); ++i) m.tv += std::abs(m.value[i] - m.value[i - 1]);
    const auto [lo, hi] = std::minmax_element(m.value.begin(), m.value.end());
    m.range = *hi - *lo;
    const double excess = m.tv - std::abs(m.value.back() - m.value.front());
    m.osc_index = std::max(excess, 0.0) / std::max(m.range, 1e-30);
    return m;
}

SystemState run_scenario(const CoupledSolver& solver, const RunOptions& options, const StepObserver& observe) {
    auto [state, robin] = solver.initialize();
    const int n_steps = solver.discretization().scenario.time.n_steps;
    for (int n = 0; n < n_steps; ++n) {
        switch (options.scheme) {
        case Scheme::decoupled: {
            auto next = solver.advance(state, robin, options.exec);
            state = std::move(next.first);
            robin = std::move(next.second);
            break;
        }
        case Scheme::monolithic: {
            SystemState next = solver.monolithic_step(state);
            robin = solver.update_robin(next, state);
            state = std::move(next);
            break;
        }
        case Scheme::subiterate: {
            SubiterationResult r =
                solver.robin_subiterate(state, robin, options.subiteration_tol, options.subiteration_max);
            state = std::move(r.state);
            robin = std::move(r.robin);
            break;
        }
        }
        if (observe) observe(state, robin);
    }
    return state;
}

RateTable convergence_study(const ConvergenceOptions& options, const std::function<void(const ErrorReport&)>& on_row) {
    RateTable table;
    for (double h : options.hs) {
        Scenario sc = manufactured_scenario(options.lambda_p, h);
        sc.time = TimeGrid::covering(options.final_time, h * h * options.final_time);
        try {
            const CoupledSolver solver(sc, options.run.formulation);
            const SystemState last = run_scenario(solver, options.run);
            table.rows.push_back(error_norms(solver.discretization(), last));
        } catch (const SolverError& e) {
            throw StudyAbortedError("convergence run at h = " + std::to_string(h) + " failed: " + e.what(), table);
        }
        if (on_row) on_row(table.rows.back());
    }
    return table;
}

std::pair<std::vector<double>, std::vector<double>> bottom_profile(const Discretization& d, const Eigen::VectorXd& p_p) {
    const double y0 = d.scenario.poro.rect.y0;
    const double tol = 1e-9 * std::max(1.0, d.scenario.poro.rect.height());
    std::vector<std::pair<double, double>> pts;
    for (int i = 0; i < d.pp.scalar_dof_count(); ++i)
        if (std::abs(d.pp.node_coord(i).y() - y0) < tol) pts.emplace_back(d.pp.node_coord(i).x(), p_p[i]);
    std::sort(pts.begin(), pts.end());
    std::pair<std::vector<double>, std::vector<double>> out;
    for (const auto& [x, v] : pts) {
        out.first.push_back(x);
        out.second.push_back(v);
    }
    return out;
}

namespace {

std::vector<int> snapshot_steps(const std::vector<double>& times, double dt) {
    if (times.empty()) throw InputError("no snapshot times");
    std::vector<int> steps;
    for (double t : times) {
        if (!(t >= 0.0)) throw InputError("snapshot times must be nonnegative");
        steps.push_back(static_cast<int>(std::llround(t / dt)));
    }
    return steps;
}

}  // namespace

std::vector<CantileverSnapshot> run_cantilever(const Scenario& scenario, BiotFormulation form,
                                               const std::vector<double>& times) {
    Scenario sc = scenario;
    const std::vector<int> steps = snapshot_steps(times, sc.time.dt);
    sc.time.n_steps = std::max(1, *std::max_element(steps.begin(), steps.end()));
    const CoupledSolver solver(sc, form);
    const Discretization& d = solver.discretization();
    std::vector<CantileverSnapshot> out(times.size());
    auto record = [&](const SystemState& s) {
        for (std::size_t k = 0; k < steps.size(); ++k) {
            if (steps[k] != s.n) continue;
            auto [x, v] = bottom_profile(d, s.p_p);
            out[k] = {s.t, OscillationMetric::of(std::move(x), std::move(v))};
        }
    };
    auto [state, robin] = solver.initialize();
    record(state);
    for (int n = 0; n < sc.time.n_steps; ++n) {
        auto next = solver.advance(state, robin);
        state = std::move(next.first);
        robin = std::move(next.second);
        record(state);
    }
    return out;
}

InterfaceSeries sample_interface(const Discretization& d, const SystemState& s) {
    InterfaceSeries r;
    r.t = s.t;
    for (const InterfaceNode& node : d.pairing.nodes) {
        r.x.push_back(node.x.x());
        r.u_py.push_back(s.u_p[d.vp.dof(node.poro_p2, 1)]);
        r.v_fx.push_back(s.v_f[d.vf.dof(node.fluid_p2, 0)]);
        r.p_f.push_back(d.qf.evaluate(s.p_f, node.x));
    }
    const double y0 = d.scenario.fluid.rect.y0;
    const double tol = 1e-9 * std::max(1.0, d.scenario.fluid.rect.height());
    std::vector<std::pair<double, double>> axis;
    for (int i = 0; i < d.vf.scalar_dof_count(); ++i)
        if (std::abs(d.vf.node_coord(i).y() - y0) < tol) axis.emplace_back(d.vf.node_coord(i).x(), s.v_f[d.vf.dof(i, 0)]);
    std::sort(axis.begin(), axis.end());
    for (const auto& [x, v] : axis) {
        r.axis_x.push_back(x);
        r.axis_v_fx.push_back(v);
    }
    return r;
}

BloodflowResult run_bloodflow(const Scenario& scenario, Scheme scheme, const std::vector<double>& times,
                              Execution exec) {
    Scenario sc = scenario;
    const std::vector<int> steps = snapshot_steps(times, sc.time.dt);
    sc.time.n_steps = *std::max_element(steps.begin(), steps.end());
    const CoupledSolver solver(sc, BiotFormulation::four_field);
    const Discretization& d = solver.discretization();
    BloodflowResult out;
    out.series.resize(times.size());
    out.states.resize(times.size());
    auto record = [&](const SystemState& s) {
        for (std::size_t k = 0; k < steps.size(); ++k) {
            if (steps[k] != s.n) continue;
            out.series[k] = sample_interface(d, s);
            out.states[k] = s;
        }
    };
    RunOptions opts;
    opts.scheme = scheme;
    opts.exec = exec;
    auto [s0, r0] = solver.initialize();
    record(s0);
    run_scenario(solver, opts, [&](const SystemState& s, const RobinTrace&) { record(s); });
    return out;
}

double relative_interface_difference(const std::vector<InterfaceSeries>& a, const std::vector<InterfaceSeries>& b) {
    if (a.size() != b.size()) throw InputError("series counts differ");
    double num = 0.0, den = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        if (a[k].u_py.size() != b[k].u_py.size()) throw InputError("series lengths differ");
        for (std::size_t i = 0; i < a[k].u_py.size(); ++i) {
            const double diff = a[k].u_py[i] - b[k].u_py[i];
            num += diff * diff;
            den += b[k].u_py[i] * b[k].u_py[i];
        }
    }
    if (den == 0.0) return num == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return std::sqrt(num / den);
}

double pulse_front(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.empty()) throw InputError("pulse front needs matching, nonempty samples");
    const std::size_t i = static_cast<std::size_t>(std::max_element(y.begin(), y.end()) - y.begin());
    if (i == 0 || i + 1 == y.size()) return x[i];
    // Vertex of the parabola through three neighbouring samples.
    const double x0 = x[i - 1], x1 = x[i], x2 = x[i + 1];
    const double y0 = y[i - 1], y1 = y[i], y2 = y[i + 1];
    const double den = (x0 - x1) * (x0 - x2) * (x1 - x2);
    const double A = (x2 * (y1 - y0) + x1 * (y0 - y2) + x0 * (y2 - y1)) / den;
    const double B = (x2 * x2 * (y0 - y1) + x1 * x1 * (y2 - y0) + x0 * x0 * (y1 - y2)) / den;
    if (A >= 0.0) return x1;
    return std::clamp(-B / (2.0 * A), x0, x2);
}

namespace {

double pressure_gap(const Discretization& d, const Eigen::VectorXd& p, const Eigen::VectorXd& beta) {
    const PhysicalParams& prm = d.scenario.params;
    const double a = prm.alpha;
    return a * a * quad_form(d.poro.m22, p, p) - 2.0 * a * quad_form(d.poro.m12, beta, p) + quad_form(d.poro.m11, beta, beta);
}

}  // namespace

double discrete_energy(const Discretization& d, const SystemState& s) {
    const PhysicalParams& prm = d.scenario.params;
    double e = 0.5 * prm.rho_f * quad_form(d.fluid.mass, s.v_f, s.v_f) + 0.5 * prm.rho_p * quad_form(d.poro.mass, s.v_p, s.v_p) +
               prm.mu_p * quad_form(d.poro.eps, s.u_p, s.u_p) + 0.5 * prm.c0 * quad_form(d.poro.m22, s.p_p, s.p_p) +
               pressure_gap(d, s.p_p, s.beta_p) / (2.0 * prm.lambda_p);
    if (prm.spring != 0.0) e += 0.5 * prm.spring * quad_form(d.poro.mass, s.u_p, s.u_p);
    return e;
}

double EnergyAudit::max_residual() const {
    double m = 0.0;
    for (const auto& s : steps) m = std::max({m, s.fluid, s.poro, s.combined});
    return m;
}

double EnergyAudit::max_energy_ratio() const {
    double m = 0.0;
    for (const auto& s : steps) m = std::max(m, initial_energy > 0.0 ? s.energy / initial_energy : 0.0);
    return m;
}

namespace {

/// LHS terms and RHS terms of one identity.
struct Balance {
    double lhs = 0.0, rhs = 0.0, scale = 0.0;
    void left(double v) {
        lhs += v;
        scale += std::abs(v);
    }
    void right(double v) {
        rhs += v;
        scale += std::abs(v);
    }
    double residual() const { return scale > 0.0 ? std::abs(lhs - rhs) / scale : 0.0; }
};

}  // namespace

EnergyAudit energy_audit(const Discretization& d, const std::vector<SystemState>& traj, const std::vector<RobinTrace>& robin) {
    if (traj.empty()) throw InputError("empty trajectory");
    if (robin.size() + 1 < traj.size()) throw InputError("trajectory needs the Robin data of every step");
    const PhysicalParams& prm = d.scenario.params;
    const RobinParams& L = d.scenario.robin;
    const double dt = d.scenario.time.dt, c = d.c_bjs, lam = prm.lambda_p;
    const InterfacePairing& pr = d.pairing;
    const SparseMatrix& TM = d.trace_mass;
    auto ip = [&](const Eigen::VectorXd& a, const Eigen::VectorXd& b) { return a.dot(TM * b); };
    auto tr = [&](const FeSpace& sp, const Eigen::VectorXd& v, Subdomain side, TraceComponent comp) {
        return interface_trace(sp, v, pr, side, comp);
    };
    const FluidMatrices& F = d.fluid;
    const PoroMatrices& P = d.poro;

    EnergyAudit audit;
    audit.initial_energy = discrete_energy(d, traj.front());
    for (std::size_t k = 0; k + 1 < traj.size(); ++k) {
        const SystemState& o = traj[k];
        const SystemState& s = traj[k + 1];
        const RobinTrace& R = robin[k];
        const Eigen::VectorXd dv = (s.v_f - o.v_f) / dt;
        const Eigen::VectorXd dvp = (s.v_p - o.v_p) / dt;
        const Eigen::VectorXd du = (s.u_p - o.u_p) / dt;
        const Eigen::VectorXd du_old = k == 0 ? o.v_p : Eigen::VectorXd((o.u_p - traj[k - 1].u_p) / dt);
        const Eigen::VectorXd dp = (s.p_p - o.p_p) / dt;
        const Eigen::VectorXd db = (s.beta_p - o.beta_p) / dt;

        const Eigen::VectorXd vn = tr(d.vf, s.v_f, Subdomain::fluid, TraceComponent::normal);
        const Eigen::VectorXd vt = tr(d.vf, s.v_f, Subdomain::fluid, TraceComponent::tangent);
        const Eigen::VectorXd vn_old = tr(d.vf, o.v_f, Subdomain::fluid, TraceComponent::normal);
        const Eigen::VectorXd vt_old = tr(d.vf, o.v_f, Subdomain::fluid, TraceComponent::tangent);
        const Eigen::VectorXd dun = tr(d.vp, du, Subdomain::poro, TraceComponent::normal);
        const Eigen::VectorXd dut = tr(d.vp, du, Subdomain::poro, TraceComponent::tangent);
        const Eigen::VectorXd dun_old = tr(d.vp, du_old, Subdomain::poro, TraceComponent::normal);
        const Eigen::VectorXd dut_old = tr(d.vp, du_old, Subdomain::poro, TraceComponent::tangent);
        const Eigen::VectorXd ps = tr(d.pp, s.p_p, Subdomain::poro, TraceComponent::scalar);
        const Eigen::VectorXd ps_old = tr(d.pp, o.p_p, Subdomain::poro, TraceComponent::scalar);

        const double kin_f = 0.5 * prm.rho_f * dt * quad_form(F.mass, dv, dv);
        const double dE_f = 0.5 * prm.rho_f * (quad_form(F.mass, s.v_f, s.v_f) - quad_form(F.mass, o.v_f, o.v_f)) / dt;
        const double visc = 2.0 * prm.mu_f * quad_form(F.eps, s.v_f, s.v_f);
        Balance fluid;
        fluid.left(kin_f);
        fluid.left(dE_f);
        fluid.left(visc);
        fluid.left(L.L1 * ip(vn, vn));
        fluid.left(c * ip(vt, vt));
        fluid.right(ip(R.R1, vn));
        fluid.right(-ip(R.R2, vt));

        const double kin_p = 0.5 * prm.rho_p * dt * quad_form(P.mass, dvp, dvp);
        const double dE_vp = 0.5 * prm.rho_p * (quad_form(P.mass, s.v_p, s.v_p) - quad_form(P.mass, o.v_p, o.v_p)) / dt;
        const double el_diss = prm.mu_p * dt * quad_form(P.eps, du, du);
        const double dE_el = prm.mu_p * (quad_form(P.eps, s.u_p, s.u_p) - quad_form(P.eps, o.u_p, o.u_p)) / dt;
        const double dE_c0 = 0.5 * prm.c0 * (quad_form(P.m22, s.p_p, s.p_p) - quad_form(P.m22, o.p_p, o.p_p)) / dt;
        const double c0_diss = 0.5 * prm.c0 * dt * quad_form(P.m22, dp, dp);
        const double dE_gap = (pressure_gap(d, s.p_p, s.beta_p) - pressure_gap(d, o.p_p, o.beta_p)) / (2.0 * lam * dt);
        const double gap_diss = dt / (2.0 * lam) * pressure_gap(d, dp, db);
        const double darcy = quad_form(P.darcy, s.p_p, s.p_p);
        double dE_spring = 0.0, spring_diss = 0.0;
        if (prm.spring != 0.0) {
            dE_spring = 0.5 * prm.spring * (quad_form(P.mass, s.u_p, s.u_p) - quad_form(P.mass, o.u_p, o.u_p)) / dt;
            spring_diss = 0.5 * prm.spring * dt * quad_form(P.mass, du, du);
        }
        Balance poro;
        for (double v : {kin_p, dE_vp, el_diss, dE_el, dE_c0, c0_diss, dE_gap, gap_diss, darcy, dE_spring, spring_diss})
            poro.left(v);
        poro.left(L.L2 * ip(dun, dun));
        poro.left(c * ip(dut, dut));
        poro.left(L.L3 * ip(ps, ps));
        poro.right(ip(R.R3, dun));
        poro.right(-ip(R.R4, dut));
        poro.right(ip(R.R5, ps));

        Balance sum;
        for (double v : {dE_f, dE_vp, dE_el, dE_c0, dE_gap, dE_spring, visc, darcy, kin_f, kin_p, el_diss, c0_diss,
                         gap_diss, spring_diss})
            sum.left(v);
        sum.left(L.L1 * ip(vn - vn_old, vn));
        sum.left(c * ip(vt + dut_old, vt));  // tau_p = -tau_f
        sum.left(L.L2 * ip(dun - dun_old, dun));
        sum.left(c * ip(dut + vt_old, dut));
        sum.left(L.L3 * ip(ps - ps_old, ps));
        sum.right(-ip(ps_old, vn));
        sum.right(-ip(ps_old, dun));
        sum.right(ip(vn_old, ps));
        sum.right(ip(dun_old, ps));

        audit.steps.push_back({s.n, fluid.residual(), poro.residual(), sum.residual(), discrete_energy(d, s)});
    }
    return audit;
}

Trajectory homogeneous_trajectory(const CoupledSolver& solver, int n_steps, unsigned seed) {
    const Discretization& d = solver.discretization();
    std::mt19937 gen(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    auto random_field = [&](const FeSpace& sp) {
        Eigen::VectorXd v(sp.dof_count());
        for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = sp.dirichlet_mask()[static_cast<std::size_t>(i)] ? 0.0 : dist(gen);
        return v;
    };
    SystemState s = solver.zero_state();
    s.v_f = random_field(d.vf);
    s.v_p = random_field(d.vp);
    s.u_p = random_field(d.vp);
    s.p_p = random_field(d.pp);
    if (solver.biot().formulation() == BiotFormulation::four_field) s.beta_p = solver.biot().consistent_beta(s.u_p, s.p_p);
    Trajectory tr;
    RobinTrace r = solver.initial_robin(s);
    tr.states.push_back(s);
    tr.robin.push_back(r);
    for (int n = 0; n < n_steps; ++n) {
        auto next = solver.advance(tr.states.back(), tr.robin.back());
        tr.states.push_back(std::move(next.first));
        tr.robin.push_back(std::move(next.second));
    }
    return tr;
}

}  // namespace fpsi
