#pragma once

#include "fpsi/mesh.hpp"

namespace fpsi {

struct PhysicalParams {
    double rho_f = 1.0;
    double mu_f = 1.0;
    double rho_p = 1.0;
    double mu_p = 1.0;
    double lambda_p = 1.0;
    double alpha = 1.0;
    double c0 = 1.0;
    Mat2 K = Mat2::Identity();
    double gamma = 1.0;
    Vec2 gravity = Vec2::Zero();
    double spring = 0.0;  // beta in the spring term beta * u

    /// mu_f * gamma / sqrt(tau . K tau).
    double c_bjs(const Vec2& tau) const;
    /// Throws InputError on any violated invariant.
    void validate() const;
};

struct LameParams {
    double mu = 0.0;
    double lambda = 0.0;
};

struct YoungPoisson {
    double E = 0.0;
    double nu = 0.0;
};

LameParams lame_from_young(double E, double nu);
YoungPoisson young_from_lame(double mu, double lambda);

struct RobinParams {
    double L1 = 1.0;
    double L2 = 1.0;
    double L3 = 1.0;

    void validate() const;
};

/// Uniform backward-Euler grid on [0, T].
struct TimeGrid {
    double dt = 1.0;
    int n_steps = 1;

    double final_time() const { return dt * n_steps; }
    double t(int n) const { return dt * n; }
    void validate() const;

    /// n_steps = round(T / dt); rejects T that is not a whole number of steps.
    static TimeGrid covering(double T, double dt);
};

}  // namespace fpsi
