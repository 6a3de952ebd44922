#pragma once

#include <memory>
#include <mutex>
#include <vector>

#include "fpsi/biot.hpp"
#include "fpsi/errors.hpp"
#include "fpsi/stokes.hpp"

namespace fpsi {

struct SystemState {
    Eigen::VectorXd v_f;
    Eigen::VectorXd p_f;
    Eigen::VectorXd v_p;
    Eigen::VectorXd u_p;
    Eigen::VectorXd beta_p;
    Eigen::VectorXd p_p;
    double t = 0.0;
    int n = 0;

    FluidFields fluid() const { return {v_f, p_f}; }
    PoroFields poro() const { return {v_p, u_p, beta_p, p_p}; }
};

/// Robin data R1..R5 as nodal values on the interface pairing nodes.
struct RobinTrace {
    Eigen::VectorXd R1;
    Eigen::VectorXd R2;
    Eigen::VectorXd R3;
    Eigen::VectorXd R4;
    Eigen::VectorXd R5;
};

struct SubiterationResult {
    SystemState state;
    RobinTrace robin;
    int iterations = 0;
    std::vector<double> history;  // relative change of the Robin data per iteration
};

class SubiterationLimitError : public IterationLimitError {
public:
    SubiterationLimitError(const std::string& what, std::vector<double> history, SystemState last)
        : IterationLimitError(what, std::move(history)), last_(std::move(last)) {}
    const SystemState& last_state() const noexcept { return last_; }

private:
    SystemState last_;
};

/// Driver of the decoupled scheme on one scenario.
class CoupledSolver {
public:
    explicit CoupledSolver(const Scenario& scenario, BiotFormulation form = BiotFormulation::four_field);
    explicit CoupledSolver(std::shared_ptr<const Discretization> disc,
                           BiotFormulation form = BiotFormulation::four_field);

    const Discretization& discretization() const { return *disc_; }
    std::shared_ptr<const Discretization> discretization_ptr() const { return disc_; }
    const StokesOperator& stokes() const { return stokes_; }
    const BiotOperator& biot() const { return biot_; }

    SystemState zero_state() const;
    /// Projected initial fields and the matching Robin data.
    std::pair<SystemState, RobinTrace> initialize() const;
    /// Robin data of a given initial state (d_t u replaced by v_p).
    RobinTrace initial_robin(const SystemState& s0) const;
    RobinTrace update_robin(const SystemState& next, const SystemState& prev) const;

    /// Both sub-solves with the given Robin data, no update.
    SystemState solve_subproblems(const SystemState& prev, const RobinTrace& robin,
                                  Execution exec = Execution::serial) const;
    std::pair<SystemState, RobinTrace> advance(const SystemState& prev, const RobinTrace& robin,
                                               Execution exec = Execution::serial) const;

    /// Fully coupled step, no lagging.
    SystemState monolithic_step(const SystemState& prev) const;
    const SparseMatrix& monolithic_matrix() const;

    /// Repeats the sub-solves at one time level with Robin data recomputed from the
    /// newest iterate until the Robin data change by less than tol.
    SubiterationResult robin_subiterate(const SystemState& prev, const RobinTrace& start, double tol,
                                        int max_iters) const;

    /// Interface L2 norm of the five Robin components together.
    double robin_norm(const RobinTrace& r) const;

private:
    struct Monolithic;
    std::shared_ptr<const Discretization> disc_;
    StokesOperator stokes_;
    BiotOperator biot_;
    mutable std::shared_ptr<const Monolithic> mono_;
    std::shared_ptr<std::mutex> mono_mutex_ = std::make_shared<std::mutex>();
    const Monolithic& monolithic() const;
};

RobinTrace operator-(const RobinTrace& a, const RobinTrace& b);

}  // namespace fpsi
