#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fpsi/fe_space.hpp"
#include "fpsi/physics/params.hpp"

namespace fpsi {

using ScalarData = std::function<double(double t, const Vec2& x)>;
using VectorData = std::function<Vec2(double t, const Vec2& x)>;

struct DomainGeometry {
    Rect rect;
    std::array<BoundaryTag, 4> tags{};  // indexed by Side
};

/// sigma n = value(t) n on edges tagged `tag`.
struct NormalTraction {
    BoundaryTag tag = BoundaryTag::neumann_traction;
    std::function<double(double t)> value;
};

/// Empty functions mean zero.
struct Forcing {
    VectorData f_f;
    ScalarData phi_f;
    VectorData f_p;
    ScalarData phi_p;
    ScalarData interface_source;
};

using MatrixFn = std::function<Mat2(const Vec2& x)>;
using PointVectorFn = std::function<Vec2(const Vec2& x)>;
using PointScalarFn = std::function<double(const Vec2& x)>;

/// Fields at t = 0 with their gradients (gradient row i = component i).
/// An empty value means the field starts at rest.
struct InitialData {
    PointVectorFn v_f;
    MatrixFn grad_v_f;
    PointScalarFn p_f;
    PointVectorFn v_p;
    MatrixFn grad_v_p;
    PointVectorFn u_p;
    MatrixFn grad_u_p;
    PointScalarFn p_p;
    PointVectorFn grad_p_p;
};

struct Scenario {
    std::string name = "custom";
    double h = 0.1;
    DomainGeometry fluid;
    DomainGeometry poro;
    PhysicalParams params;
    RobinParams robin;
    TimeGrid time;

    std::vector<DirichletSpec> fluid_velocity_bc;
    std::vector<DirichletSpec> poro_displacement_bc;  // shared by v_p
    std::vector<DirichletSpec> poro_pressure_bc;
    VectorData fluid_velocity_data;
    VectorData poro_displacement_data;
    VectorData poro_velocity_data;
    ScalarData poro_pressure_data;
    std::vector<NormalTraction> fluid_tractions;
    std::vector<NormalTraction> poro_tractions;

    Forcing forcing;
    InitialData initial;
    /// Set when the manufactured closed forms apply (error norms, exact traces).
    bool has_exact_solution = false;

    void validate() const;
};

/// manufactured (lambda_p = 1), cantilever, bloodflow (case 1).
Scenario scenario_catalog(std::string_view name);

Scenario manufactured_scenario(double lambda_p, double h);
/// Same closed forms with other coefficients; forcing follows the parameters.
Scenario manufactured_scenario(const PhysicalParams& params, double h);
Scenario cantilever_scenario();
/// Case 1, 2, 3: L1 = L2 = 1e3, 1e2, 1e4.
Scenario bloodflow_scenario(int which_case);

/// Pulse P_max/2 (1 - cos(2 pi t / T_max)) for t <= T_max, else 0.
inline constexpr double kInletPeakPressure = 13334.0;
inline constexpr double kInletPulseDuration = 0.003;
double inlet_pressure(double t);

/// Replaces every time-dependent datum by zero (homogeneous forcing and boundary data).
Scenario homogeneous(Scenario s);

}  // namespace fpsi
