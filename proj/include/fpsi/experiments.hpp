#pragma once

#include <array>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fpsi/coupling.hpp"

namespace fpsi {

struct ErrorReport {
    double e_vf_H1 = 0.0;
    double e_pf_L2 = 0.0;
    double e_eng = 0.0;
    double e_up_H1 = 0.0;
    double e_betap_L2 = 0.0;
    double e_pp_H1 = 0.0;
    double h = 0.0;
    double dt = 0.0;
    double lambda_p = 0.0;

    static constexpr std::array<std::string_view, 6> kNames{"e_vf_H1", "e_pf_L2", "e_eng",
                                                            "e_up_H1", "e_betap_L2", "e_pp_H1"};
    std::array<double, 6> values() const { return {e_vf_H1, e_pf_L2, e_eng, e_up_H1, e_betap_L2, e_pp_H1}; }
};

/// Errors of `state` against the manufactured solution at its time, by degree-6 quadrature.
ErrorReport error_norms(const Discretization& d, const SystemState& state);

/// Rows ordered by decreasing h; rates between successive rows.
struct RateTable {
    std::vector<ErrorReport> rows;

    /// rates()[i][k] = log2(e_k(row i) / e_k(row i+1)) / log2(h_i / h_{i+1}).
    std::vector<std::array<double, 6>> rates() const;
    /// Smallest rate of column k over all pairs.
    double min_rate(int k) const;
    /// Least-squares slope of log e_k against log h over all rows.
    std::array<double, 6> fitted() const;
};

struct OscillationMetric {
    std::vector<double> x;
    std::vector<double> value;
    double tv = 0.0;
    double range = 0.0;
    double osc_index = 0.0;

    static OscillationMetric of(std::vector<double> x, std::vector<double> value);
};

enum class Scheme { decoupled, monolithic, subiterate };

struct RunOptions {
    BiotFormulation formulation = BiotFormulation::four_field;
    Scheme scheme = Scheme::decoupled;
    Execution exec = Execution::serial;
    double subiteration_tol = 1e-10;
    int subiteration_max = 200;
};

/// Called after every completed step with the new state and Robin data.
using StepObserver = std::function<void(const SystemState&, const RobinTrace&)>;

/// Initializes and runs all steps of the scenario's time grid.
SystemState run_scenario(const CoupledSolver& solver, const RunOptions& options, const StepObserver& observe = {});

/// Convergence study on the manufactured problem, dt = h^2 T.
struct ConvergenceOptions {
    double lambda_p = 1.0;
    std::vector<double> hs{1.0 / 4, 1.0 / 8, 1.0 / 16, 1.0 / 32};
    double final_time = 1.0;
    RunOptions run;
};

/// A failed sub-run leaves the rows computed so far in `partial`.
class StudyAbortedError : public SolverError {
public:
    StudyAbortedError(const std::string& what, RateTable partial) : SolverError(what), partial_(std::move(partial)) {}
    const RateTable& partial() const noexcept { return partial_; }

private:
    RateTable partial_;
};

RateTable convergence_study(const ConvergenceOptions& options,
                            const std::function<void(const ErrorReport&)>& on_row = {});

/// p_p along the bottom side of the poroelastic rectangle, ordered by x.
std::pair<std::vector<double>, std::vector<double>> bottom_profile(const Discretization& d, const Eigen::VectorXd& p_p);

struct CantileverSnapshot {
    double t = 0.0;
    OscillationMetric metric;
};

/// Snapshots at the given times (rounded to whole steps) of a cantilever run.
std::vector<CantileverSnapshot> run_cantilever(const Scenario& scenario, BiotFormulation form,
                                               const std::vector<double>& times);

/// Samples along a horizontal line at the interface nodes.
struct InterfaceSeries {
    double t = 0.0;
    std::vector<double> x;
    std::vector<double> u_py;   // interface displacement, y component
    std::vector<double> v_fx;   // interface fluid velocity, x component
    std::vector<double> p_f;    // interface fluid pressure
    std::vector<double> axis_x;
    std::vector<double> axis_v_fx;  // along the bottom of the fluid domain
};

struct BloodflowResult {
    std::vector<InterfaceSeries> series;
    std::vector<SystemState> states;  // matching snapshots
};

/// Runs up to the last snapshot time.
BloodflowResult run_bloodflow(const Scenario& scenario, Scheme scheme, const std::vector<double>& times,
                              Execution exec = Execution::serial);

/// Interface sampling of a state.
InterfaceSeries sample_interface(const Discretization& d, const SystemState& s);

/// Relative L2 difference of u_p,y over all matching snapshots.
double relative_interface_difference(const std::vector<InterfaceSeries>& a, const std::vector<InterfaceSeries>& b);

/// Location of the maximum of y(x), refined by a parabola through the
/// neighbouring samples.
double pulse_front(const std::vector<double>& x, const std::vector<double>& y);

/// Discrete energy of a four-field state (spring term included).
double discrete_energy(const Discretization& d, const SystemState& s);

struct EnergyStepResidual {
    int n = 0;
    double fluid = 0.0;     // relative residual of the fluid identity
    double poro = 0.0;      // relative residual of the poroelastic identity
    double combined = 0.0;  // relative residual of their sum after the Robin substitution
    double energy = 0.0;
};

struct EnergyAudit {
    std::vector<EnergyStepResidual> steps;
    double initial_energy = 0.0;
    double max_residual() const;
    double max_energy_ratio() const;
};

/// Residuals of the per-step energy identities along a four-field trajectory.
/// trajectory[k] is state k; robin[k] the Robin data used to compute state k+1.
EnergyAudit energy_audit(const Discretization& d, const std::vector<SystemState>& trajectory,
                         const std::vector<RobinTrace>& robin);

/// Homogeneous run of n steps from random initial data (seeded), recorded for the audit.
struct Trajectory {
    std::vector<SystemState> states;
    std::vector<RobinTrace> robin;
};
Trajectory homogeneous_trajectory(const CoupledSolver& solver, int n_steps, unsigned seed);

}  // namespace fpsi
