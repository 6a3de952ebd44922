#include "fpsi/physics/params.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "fpsi/errors.hpp"

namespace fpsi {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw InputError(what);
}

bool positive(double v) { return v > 0.0 && std::isfinite(v); }

}  // namespace

double PhysicalParams::c_bjs(const Vec2& tau) const {
    const double ktt = tau.dot(K * tau);
    require(ktt > 0.0, "tangential permeability must be positive");
    return mu_f * gamma / std::sqrt(ktt);
}

void PhysicalParams::validate() const {
    require(positive(mu_f), "mu_f must be positive");
    require(positive(mu_p), "mu_p must be positive");
    require(positive(rho_f), "rho_f must be positive");
    require(rho_p >= 0.0 && std::isfinite(rho_p), "rho_p must be nonnegative");
    require(positive(lambda_p), "lambda_p must be positive");
    require(c0 >= 0.0 && std::isfinite(c0), "c0 must be nonnegative");
    require(alpha > 0.0 && alpha <= 1.0, "alpha must lie in (0, 1]");
    require(gamma >= 0.0 && std::isfinite(gamma), "gamma must be nonnegative");
    require(spring >= 0.0 && std::isfinite(spring), "spring coefficient must be nonnegative");
    require(K.allFinite() && std::abs(K(0, 1) - K(1, 0)) <= 1e-14 * K.norm(), "K must be symmetric");
    const Eigen::SelfAdjointEigenSolver<Mat2> es(K);
    require(es.eigenvalues().minCoeff() > 0.0, "K must be positive definite");
    require(gravity.allFinite(), "gravity must be finite");
    require(std::isfinite(c_bjs(Vec2(1.0, 0.0))) && std::isfinite(c_bjs(Vec2(0.0, 1.0))), "c_BJS must be finite");
}

LameParams lame_from_young(double E, double nu) {
    require(positive(E), "Young's modulus must be positive");
    require(nu > 0.0 && nu < 0.5, "Poisson ratio must lie in (0, 0.5)");
    return {E / (2.0 * (1.0 + nu)), E * nu / ((1.0 + nu) * (1.0 - 2.0 * nu))};
}

YoungPoisson young_from_lame(double mu, double lambda) {
    require(positive(mu) && positive(lambda), "Lame parameters must be positive");
    return {mu * (3.0 * lambda + 2.0 * mu) / (lambda + mu), lambda / (2.0 * (lambda + mu))};
}

void RobinParams::validate() const {
    require(positive(L1) && positive(L2) && positive(L3), "Robin parameters L1, L2, L3 must be positive");
}

void TimeGrid::validate() const {
    require(positive(dt), "dt must be positive");
    require(n_steps >= 0, "step count must be nonnegative");
}

TimeGrid TimeGrid::covering(double T, double dt) {
    require(positive(dt), "dt must be positive");
    require(T >= 0.0 && std::isfinite(T), "final time must be nonnegative");
    const double steps = T / dt;
    const double n = std::round(steps);
    require(std::abs(steps - n) <= 1e-6 * std::max(1.0, n), "final time is not a whole number of steps");
    return TimeGrid{dt, static_cast<int>(n)};
}

}  // namespace fpsi
