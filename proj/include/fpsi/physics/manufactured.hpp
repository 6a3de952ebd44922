#pragma once

#include "fpsi/physics/params.hpp"

namespace fpsi {

/// Closed-form fields of the manufactured test: fluid on (0,1)^2, poroelastic
/// on (0,1)x(-1,0), interface y = 0.
struct ExactFields {
    Vec2 v_f;
    double p_f = 0.0;
    Vec2 u_p;
    Vec2 v_p;
    double p_p = 0.0;
    double beta_p = 0.0;
};

struct ManufacturedForcing {
    Vec2 f_f;
    double phi_f = 0.0;
    Vec2 f_p;
    double phi_p = 0.0;
};

ExactFields exact_solution(double lambda_p, double alpha, double t, const Vec2& x);

/// Velocity-like field e^t (cos2pix sin2piy, cos y/(lambda+1) - cos2piy sin2pix),
/// shared by v_f, u_p and v_p.
Vec2 manufactured_velocity(double lambda_p, double t, const Vec2& x);
/// Gradient (row i = component, column j = d/dx_j).
Mat2 manufactured_velocity_gradient(double lambda_p, double t, const Vec2& x);
double manufactured_pp(double t, const Vec2& x);
Vec2 manufactured_pp_gradient(double t, const Vec2& x);
double manufactured_pf(double lambda_p, double t, const Vec2& x);

ManufacturedForcing forcing(const PhysicalParams& params, double t, const Vec2& x);

/// Interface flux mismatch v_f.n_f + d_t u.n_p + q.n_p of the exact fields at
/// (x, 0), with q the Darcy flux. Nonzero; enters the flux balance as a source.
double manufactured_interface_source(const PhysicalParams& params, double t, const Vec2& x);

}  // namespace fpsi
