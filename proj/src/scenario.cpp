#include "fpsi/physics/scenario.hpp"

#include <cmath>
#include <numbers>

#include "fpsi/errors.hpp"
#include "fpsi/physics/manufactured.hpp"

namespace fpsi {

namespace {

using T = BoundaryTag;

std::array<BoundaryTag, 4> sides(T bottom, T right, T top, T left) { return {bottom, right, top, left}; }

bool interface_on(const DomainGeometry& g, Side s) { return g.tags[static_cast<std::size_t>(s)] == T::interface; }

}  // namespace

void Scenario::validate() const {
    params.validate();
    robin.validate();
    time.validate();
    if (!(h > 0.0) || !std::isfinite(h)) throw InputError("mesh size h must be positive");
    int nf = 0, np = 0;
    for (auto tag : fluid.tags) nf += tag == T::interface;
    for (auto tag : poro.tags) np += tag == T::interface;
    if (nf != 1 || np != 1) throw InputError("each domain needs exactly one side tagged 'interface'");
    const bool f_top = interface_on(fluid, Side::top), f_bottom = interface_on(fluid, Side::bottom);
    const bool p_top = interface_on(poro, Side::top), p_bottom = interface_on(poro, Side::bottom);
    if (!((f_bottom && p_top) || (f_top && p_bottom)))
        throw InputError("the interface must be a horizontal side shared by both rectangles");
    for (const auto& t : fluid_tractions)
        if (!t.value) throw InputError("fluid traction without a value");
    for (const auto& t : poro_tractions)
        if (!t.value) throw InputError("poroelastic traction without a value");
}

double inlet_pressure(double t) {
    if (t < 0.0) throw InputError("inlet pressure needs t >= 0");
    if (t > kInletPulseDuration) return 0.0;
    return 0.5 * kInletPeakPressure * (1.0 - std::cos(2.0 * std::numbers::pi * t / kInletPulseDuration));
}

Scenario manufactured_scenario(double lambda_p, double h) {
    PhysicalParams p;
    p.lambda_p = lambda_p;
    return manufactured_scenario(p, h);
}

Scenario manufactured_scenario(const PhysicalParams& params, double h) {
    const double lambda_p = params.lambda_p;
    Scenario s;
    s.name = "manufactured";
    s.h = h;
    s.fluid = {Rect{0.0, 1.0, 0.0, 1.0}, sides(T::interface, T::dirichlet_velocity, T::dirichlet_velocity, T::dirichlet_velocity)};
    s.poro = {Rect{0.0, 1.0, -1.0, 0.0}, sides(T::external, T::external, T::interface, T::external)};
    s.params = params;
    s.robin = RobinParams{1.0, 1.0, 1.0};
    s.time = TimeGrid::covering(1.0, h * h);

    s.fluid_velocity_bc = {{T::dirichlet_velocity, ComponentMask::all}};
    s.poro_displacement_bc = {{T::external, ComponentMask::all}};
    s.poro_pressure_bc = {{T::external, ComponentMask::all}};
    s.fluid_velocity_data = [lambda_p](double t, const Vec2& x) { return manufactured_velocity(lambda_p, t, x); };
    s.poro_displacement_data = s.fluid_velocity_data;
    s.poro_velocity_data = s.fluid_velocity_data;
    s.poro_pressure_data = [](double t, const Vec2& x) { return manufactured_pp(t, x); };

    const PhysicalParams prm = s.params;
    s.forcing.f_f = [prm](double t, const Vec2& x) { return forcing(prm, t, x).f_f; };
    s.forcing.phi_f = [prm](double t, const Vec2& x) { return forcing(prm, t, x).phi_f; };
    s.forcing.f_p = [prm](double t, const Vec2& x) { return forcing(prm, t, x).f_p; };
    s.forcing.phi_p = [prm](double t, const Vec2& x) { return forcing(prm, t, x).phi_p; };
    s.forcing.interface_source = [prm](double t, const Vec2& x) { return manufactured_interface_source(prm, t, x); };

    s.initial.v_f = [lambda_p](const Vec2& x) { return manufactured_velocity(lambda_p, 0.0, x); };
    s.initial.grad_v_f = [lambda_p](const Vec2& x) { return manufactured_velocity_gradient(lambda_p, 0.0, x); };
    s.initial.v_p = s.initial.v_f;
    s.initial.grad_v_p = s.initial.grad_v_f;
    s.initial.u_p = s.initial.v_f;
    s.initial.grad_u_p = s.initial.grad_v_f;
    s.initial.p_f = [lambda_p](const Vec2& x) { return manufactured_pf(lambda_p, 0.0, x); };
    s.initial.p_p = [](const Vec2& x) { return manufactured_pp(0.0, x); };
    s.initial.grad_p_p = [](const Vec2& x) { return manufactured_pp_gradient(0.0, x); };
    s.has_exact_solution = true;
    return s;
}

Scenario cantilever_scenario() {
    Scenario s;
    s.name = "cantilever";
    s.h = 0.05;
    s.fluid = {Rect{0.0, 1.0, 0.0, 1.0}, sides(T::interface, T::dirichlet_velocity, T::neumann_traction, T::dirichlet_velocity)};
    s.poro = {Rect{0.0, 1.0, -1.0, 0.0}, sides(T::dirichlet_velocity, T::external, T::interface, T::neumann_traction)};
    PhysicalParams& p = s.params;
    p.rho_f = 1.0;
    p.mu_f = 1e-2;
    p.rho_p = 1e-10;
    const LameParams lame = lame_from_young(1e5, 0.4);
    p.mu_p = lame.mu;
    p.lambda_p = lame.lambda;
    p.c0 = 0.0;
    p.alpha = 0.93;
    p.K = 1e-7 * Mat2::Identity();
    p.gamma = 1.0;
    s.robin = RobinParams{1e3, 1e3, p.K(1, 1) / p.mu_f};
    s.time = TimeGrid{1e-5, 10};
    s.fluid_velocity_bc = {{T::dirichlet_velocity, ComponentMask::all}};
    s.poro_displacement_bc = {{T::dirichlet_velocity, ComponentMask::all}};
    // sigma n = (-1, 0) on x = 0, where n = (-1, 0).
    s.poro_tractions = {{T::neumann_traction, [](double) { return 1.0; }}};
    return s;
}

Scenario bloodflow_scenario(int which_case) {
    static constexpr double kL[] = {1e3, 1e2, 1e4};
    if (which_case < 1 || which_case > 3) throw InputError("blood-flow case must be 1, 2 or 3");
    Scenario s;
    s.name = "bloodflow";
    s.h = 0.05;
    const double R = 0.5, L = 6.0, r_p = 0.1;
    s.fluid = {Rect{0.0, L, 0.0, R}, sides(T::symmetry, T::outlet, T::interface, T::inlet)};
    s.poro = {Rect{0.0, L, R, R + r_p}, sides(T::interface, T::outlet, T::external, T::inlet)};
    PhysicalParams& p = s.params;
    p.rho_p = 1.1;
    p.rho_f = 1.0;
    p.mu_f = 0.035;
    p.spring = 4e6;
    p.c0 = 1e-3;
    p.K = 1e-6 * Mat2::Identity();
    p.mu_p = 5.575e5;
    p.lambda_p = 1.7e6;
    p.gamma = 1e3;
    p.alpha = 1.0;
    const double l12 = kL[which_case - 1];
    s.robin = RobinParams{l12, l12, 1e-6};
    s.time = TimeGrid::covering(0.014, 5e-5);
    s.fluid_velocity_bc = {{T::symmetry, ComponentMask::y}};
    s.poro_displacement_bc = {{T::inlet, ComponentMask::all}, {T::outlet, ComponentMask::all}};
    s.fluid_tractions = {{T::inlet, [](double t) { return -inlet_pressure(t); }}};
    return s;
}

Scenario scenario_catalog(std::string_view name) {
    if (name == "manufactured") return manufactured_scenario(1.0, 1.0 / 8.0);
    if (name == "cantilever") return cantilever_scenario();
    if (name == "bloodflow") return bloodflow_scenario(1);
    throw InputError("unknown scenario '" + std::string(name) + "'");
}

Scenario homogeneous(Scenario s) {
    s.fluid_velocity_data = nullptr;
    s.poro_displacement_data = nullptr;
    s.poro_velocity_data = nullptr;
    s.poro_pressure_data = nullptr;
    s.fluid_tractions.clear();
    s.poro_tractions.clear();
    s.forcing = Forcing{};
    s.params.gravity.setZero();
    s.has_exact_solution = false;
    s.initial = InitialData{};
    return s;
}

}  // namespace fpsi
