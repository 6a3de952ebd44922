#include "fpsi/physics/manufactured.hpp"

#include <cmath>
#include <numbers>

namespace fpsi {

namespace {

constexpr double pi = std::numbers::pi;

}  // namespace

Vec2 manufactured_velocity(double lam, double t, const Vec2& p) {
    const double x = p.x(), y = p.y(), e = std::exp(t);
    return e * Vec2(std::cos(2 * pi * x) * std::sin(2 * pi * y),
                    std::cos(y) / (lam + 1) - std::cos(2 * pi * y) * std::sin(2 * pi * x));
}

Mat2 manufactured_velocity_gradient(double lam, double t, const Vec2& p) {
    const double x = p.x(), y = p.y(), e = std::exp(t);
    Mat2 g;
    g(0, 0) = -2 * pi * std::sin(2 * pi * x) * std::sin(2 * pi * y);
    g(0, 1) = 2 * pi * std::cos(2 * pi * x) * std::cos(2 * pi * y);
    g(1, 0) = -2 * pi * std::cos(2 * pi * y) * std::cos(2 * pi * x);
    g(1, 1) = -std::sin(y) / (lam + 1) + 2 * pi * std::sin(2 * pi * y) * std::sin(2 * pi * x);
    return e * g;
}

double manufactured_pp(double t, const Vec2& p) { return std::exp(t) * std::cos(pi * p.x()) * std::sin(pi * p.y()); }

Vec2 manufactured_pp_gradient(double t, const Vec2& p) {
    const double x = p.x(), y = p.y();
    return std::exp(t) * pi * Vec2(-std::sin(pi * x) * std::sin(pi * y), std::cos(pi * x) * std::cos(pi * y));
}

double manufactured_pf(double lam, double t, const Vec2& p) {
    return manufactured_pp(t, p) + lam * std::exp(t) * std::sin(p.y()) / (lam + 1);
}

ExactFields exact_solution(double lam, double alpha, double t, const Vec2& x) {
    ExactFields f;
    f.v_f = manufactured_velocity(lam, t, x);
    f.u_p = f.v_f;
    f.v_p = f.v_f;
    f.p_f = manufactured_pf(lam, t, x);
    f.p_p = manufactured_pp(t, x);
    // beta = alpha p - lambda div u, div u = -e^t sin y / (lambda + 1)
    f.beta_p = alpha * f.p_p + lam * std::exp(t) * std::sin(x.y()) / (lam + 1);
    return f;
}

ManufacturedForcing forcing(const PhysicalParams& prm, double t, const Vec2& p) {
    const double x = p.x(), y = p.y(), e = std::exp(t);
    const double lam = prm.lambda_p, r = 1.0 / (lam + 1), s = lam / (lam + 1);
    const double s2x = std::sin(2 * pi * x), c2x = std::cos(2 * pi * x);
    const double s2y = std::sin(2 * pi * y), c2y = std::cos(2 * pi * y);
    const double sx = std::sin(pi * x), cx = std::cos(pi * x), sy = std::sin(pi * y), cy = std::cos(pi * y);
    const double k8 = 8 * pi * pi;
    ManufacturedForcing f;
    f.f_f.x() = e * ((k8 * prm.mu_f + prm.rho_f) * s2y * c2x - pi * sx * sy);
    f.f_f.y() = e * (s * std::cos(y) + (2 * prm.mu_f + prm.rho_f) * r * std::cos(y) - (k8 * prm.mu_f + prm.rho_f) * s2x * c2y +
                     pi * cx * cy);
    f.phi_f = -e * r * std::sin(y);
    f.f_p.x() = e * (-pi * prm.alpha * sx * sy + (k8 * prm.mu_p + prm.rho_p) * s2y * c2x);
    f.f_p.y() = e * (pi * prm.alpha * cx * cy + s * std::cos(y) + (2 * prm.mu_p + prm.rho_p) * r * std::cos(y) -
                     (k8 * prm.mu_p + prm.rho_p) * s2x * c2y);
    const double kxx = prm.K(0, 0), kxy = prm.K(0, 1), kyy = prm.K(1, 1);
    f.phi_p = e * (-prm.alpha * r * std::sin(y) + prm.c0 * sy * cx +
                   pi * pi / prm.mu_f * ((kxx + kyy) * sy * cx + 2 * kxy * sx * cy));
    return f;
}

double manufactured_interface_source(const PhysicalParams& prm, double t, const Vec2& x) {
    return -pi * prm.K(1, 1) / prm.mu_f * std::exp(t) * std::cos(pi * x.x());
}

}  // namespace fpsi
