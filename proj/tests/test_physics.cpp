#include <gtest/gtest.h>

#include <cmath>

#include "fpsi/errors.hpp"
#include "fpsi/physics/manufactured.hpp"
#include "fpsi/physics/scenario.hpp"

using namespace fpsi;

namespace {

PhysicalParams odd_params() {
    PhysicalParams p;
    p.rho_f = 1.3;
    p.mu_f = 0.7;
    p.rho_p = 2.1;
    p.mu_p = 1.9;
    p.lambda_p = 3.5;
    p.alpha = 0.8;
    p.c0 = 0.4;
    p.K << 1.5, 0.3, 0.3, 0.9;
    return p;
}

constexpr double kStep = 1e-4;

// Central differences of the closed forms.
Mat2 d_dt_grad(double lam, double t, const Vec2& x) {
    return (manufactured_velocity_gradient(lam, t + kStep, x) - manufactured_velocity_gradient(lam, t - kStep, x)) /
           (2 * kStep);
}

// div of the symmetric gradient, component i: sum_j d_j eps_ij.
Vec2 div_eps(double lam, double t, const Vec2& x) {
    Vec2 out = Vec2::Zero();
    for (int j = 0; j < 2; ++j) {
        Vec2 e = Vec2::Zero();
        e[j] = kStep;
        const Mat2 gp = manufactured_velocity_gradient(lam, t, x + e), gm = manufactured_velocity_gradient(lam, t, x - e);
        const Mat2 ep = 0.5 * (gp + gp.transpose()), em = 0.5 * (gm + gm.transpose());
        out += (ep.col(j) - em.col(j)) / (2 * kStep);
    }
    return out;
}

Vec2 grad_div(double lam, double t, const Vec2& x) {
    Vec2 out;
    for (int j = 0; j < 2; ++j) {
        Vec2 e = Vec2::Zero();
        e[j] = kStep;
        out[j] = (manufactured_velocity_gradient(lam, t, x + e).trace() -
                  manufactured_velocity_gradient(lam, t, x - e).trace()) /
                 (2 * kStep);
    }
    return out;
}

template <class F>
Vec2 fd_grad(F f, const Vec2& x) {
    return Vec2((f(x + Vec2(kStep, 0)) - f(x - Vec2(kStep, 0))) / (2 * kStep),
                (f(x + Vec2(0, kStep)) - f(x - Vec2(0, kStep))) / (2 * kStep));
}

}  // namespace

TEST(Params, ValidationRejectsViolations) {
    PhysicalParams p;
    EXPECT_NO_THROW(p.validate());
    p.alpha = 1.5;
    EXPECT_THROW(p.validate(), InputError);
    p = PhysicalParams{};
    p.K << 1.0, 0.5, 0.4, 1.0;
    EXPECT_THROW(p.validate(), InputError);
    p.K << 1.0, 2.0, 2.0, 1.0;
    EXPECT_THROW(p.validate(), InputError);
    p = PhysicalParams{};
    p.mu_f = 0.0;
    EXPECT_THROW(p.validate(), InputError);
    EXPECT_THROW((RobinParams{1.0, -1.0, 1.0}.validate()), InputError);
    EXPECT_THROW((TimeGrid{0.0, 3}.validate()), InputError);
}

TEST(Params, LameConversionRoundTrip) {
    const LameParams l = lame_from_young(1e5, 0.4);
    EXPECT_NEAR(l.mu, 1e5 / 2.8, 1e-9);
    EXPECT_NEAR(l.lambda, 0.4e5 / (1.4 * 0.2), 1e-8);
    const YoungPoisson y = young_from_lame(l.mu, l.lambda);
    EXPECT_NEAR(y.E, 1e5, 1e-8);
    EXPECT_NEAR(y.nu, 0.4, 1e-14);
}

TEST(Params, BjsCoefficient) {
    PhysicalParams p = odd_params();
    p.gamma = 2.0;
    EXPECT_NEAR(p.c_bjs(Vec2(1, 0)), 0.7 * 2.0 / std::sqrt(1.5), 1e-14);
}

TEST(TimeGridTest, Covering) {
    const TimeGrid g = TimeGrid::covering(1.0, 1.0 / 64);
    EXPECT_EQ(g.n_steps, 64);
    EXPECT_DOUBLE_EQ(g.final_time(), 1.0);
    EXPECT_THROW(TimeGrid::covering(1.0, 0.3), InputError);
}

// Strong-form residuals of the closed forms, by finite differences.
TEST(Manufactured, ForcingMatchesFiniteDifferenceResidual) {
    const PhysicalParams p = odd_params();
    const double lam = p.lambda_p;
    for (const Vec2& x : {Vec2(0.3, 0.6), Vec2(0.71, -0.4), Vec2(0.12, -0.93)}) {
        const double t = 0.37;
        const ManufacturedForcing f = forcing(p, t, x);
        const ExactFields e = exact_solution(lam, p.alpha, t, x);
        const Mat2 g = manufactured_velocity_gradient(lam, t, x);
        // velocities are e^t times a fixed field
        const Vec2 dv = e.v_f;

        const Vec2 grad_pf = fd_grad([&](const Vec2& y) { return manufactured_pf(lam, t, y); }, x);
        const Vec2 fluid = p.rho_f * dv - 2 * p.mu_f * div_eps(lam, t, x) + grad_pf;
        EXPECT_NEAR((fluid - f.f_f).norm(), 0.0, 1e-6 * (1 + f.f_f.norm()));
        EXPECT_NEAR(g.trace(), f.phi_f, 1e-12);

        const Vec2 grad_pp = fd_grad([&](const Vec2& y) { return manufactured_pp(t, y); }, x);
        EXPECT_NEAR((grad_pp - manufactured_pp_gradient(t, x)).norm(), 0.0, 1e-6);
        const Vec2 poro = p.rho_p * e.v_p - 2 * p.mu_p * div_eps(lam, t, x) - lam * grad_div(lam, t, x) + p.alpha * grad_pp;
        EXPECT_NEAR((poro - f.f_p).norm(), 0.0, 1e-6 * (1 + f.f_p.norm()));

        // c0 dp/dt + alpha d/dt div u - div(K/mu grad p)
        auto flux = [&](const Vec2& y) -> Vec2 { return p.K / p.mu_f * manufactured_pp_gradient(t, y); };
        const double div_flux = (flux(x + Vec2(kStep, 0)).x() - flux(x - Vec2(kStep, 0)).x() +
                                 flux(x + Vec2(0, kStep)).y() - flux(x - Vec2(0, kStep)).y()) /
                                (2 * kStep);
        const double darcy = p.c0 * e.p_p + p.alpha * d_dt_grad(lam, t, x).trace() - div_flux;
        EXPECT_NEAR(darcy, f.phi_p, 1e-6 * (1 + std::abs(f.phi_p)));

        EXPECT_NEAR(e.beta_p, p.alpha * e.p_p - lam * g.trace(), 1e-12);
    }
}

TEST(Manufactured, InterfaceSourceIsFluxMismatch) {
    const PhysicalParams p = odd_params();
    for (double xs : {0.1, 0.5, 0.8}) {
        const Vec2 x(xs, 0.0);
        const double t = 0.2;
        const Vec2 v = manufactured_velocity(p.lambda_p, t, x);
        const Vec2 q = -p.K / p.mu_f * manufactured_pp_gradient(t, x);
        const Vec2 n_f(0, -1), n_p(0, 1);
        EXPECT_NEAR(manufactured_interface_source(p, t, x), v.dot(n_f) + v.dot(n_p) + q.dot(n_p),
                    1e-12 * (1 + std::abs(q.y())));
    }
}

TEST(Scenarios, CatalogValues) {
    const Scenario c = cantilever_scenario();
    EXPECT_NEAR(c.params.mu_p, 1e5 / 2.8, 1e-9);
    EXPECT_EQ(c.params.c0, 0.0);
    EXPECT_EQ(c.params.alpha, 0.93);
    EXPECT_EQ(c.time.dt, 1e-5);
    EXPECT_NEAR(c.robin.L3, 1e-5, 1e-20);
    EXPECT_NO_THROW(c.validate());

    for (int k = 1; k <= 3; ++k) {
        const Scenario b = bloodflow_scenario(k);
        EXPECT_EQ(b.robin.L1, (std::array<double, 3>{1e3, 1e2, 1e4}[k - 1]));
        EXPECT_EQ(b.robin.L1, b.robin.L2);
        EXPECT_EQ(b.robin.L3, 1e-6);
        EXPECT_EQ(b.time.n_steps, 280);
        EXPECT_NO_THROW(b.validate());
    }
    EXPECT_THROW(bloodflow_scenario(4), InputError);

    const Scenario m = manufactured_scenario(1e10, 0.125);
    EXPECT_EQ(m.params.lambda_p, 1e10);
    EXPECT_EQ(m.time.n_steps, 64);
    EXPECT_TRUE(m.has_exact_solution);
    EXPECT_THROW(scenario_catalog("lake"), InputError);
}

TEST(Scenarios, InletPulse) {
    EXPECT_EQ(inlet_pressure(0.0), 0.0);
    EXPECT_NEAR(inlet_pressure(0.0015), 13334.0, 1e-9);
    EXPECT_EQ(inlet_pressure(0.004), 0.0);
    EXPECT_THROW(inlet_pressure(-1.0), InputError);
}

TEST(Scenarios, ValidationCatchesGeometry) {
    Scenario s = cantilever_scenario();
    s.poro.tags[2] = BoundaryTag::external;
    EXPECT_THROW(s.validate(), InputError);
    s = cantilever_scenario();
    s.h = 0.0;
    EXPECT_THROW(s.validate(), InputError);
}
