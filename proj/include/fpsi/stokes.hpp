#pragma once

#include <memory>

#include "fpsi/constraints.hpp"
#include "fpsi/discretization.hpp"

namespace fpsi {

struct FluidFields {
    Eigen::VectorXd v;
    Eigen::VectorXd p;
};

/// Backward-Euler Stokes step with Robin data on the interface. Unknowns
/// (v_f, p_f); the matrix is factorized once.
class StokesOperator {
public:
    explicit StokesOperator(std::shared_ptr<const Discretization> disc);

    /// R1, R2 are nodal values on the pairing nodes.
    FluidFields step(const Eigen::VectorXd& v_prev, const Eigen::VectorXd& R1, const Eigen::VectorXd& R2,
                     double t_next) const;

    /// Unconstrained block matrix [A, -B^T; B, 0].
    const SparseMatrix& matrix() const { return matrix_; }
    const ConstrainedSystem& system() const { return *system_; }
    const Discretization& discretization() const { return *disc_; }
    int velocity_size() const { return disc_->vf.dof_count(); }

    Eigen::VectorXd rhs(const Eigen::VectorXd& v_prev, const Eigen::VectorXd& R1, const Eigen::VectorXd& R2,
                        double t_next) const;

private:
    std::shared_ptr<const Discretization> disc_;
    SparseMatrix matrix_;
    std::unique_ptr<ConstrainedSystem> system_;
};

FluidFields stokes_step(const StokesOperator& op, const Eigen::VectorXd& v_prev, const Eigen::VectorXd& R1,
                        const Eigen::VectorXd& R2, double t_next);

/// -p (w.n) integrated over the edges tagged `tag` (sigma_f n = -p n).
Eigen::VectorXd fluid_traction_bc(const FeSpace& space, double p, BoundaryTag tag);

/// Solution of 2 mu (eps Qv, eps w) - (Qp, div w) = 2 mu (eps v, eps w) - (p, div w),
/// (div Qv, q) = (div v, q), with Qv = v on Dirichlet dofs. If every
/// velocity boundary dof is constrained, the pressure mean matches that of p.
struct ProjectionData {
    PointVectorFn value;
    MatrixFn gradient;
    PointScalarFn pressure;  // empty means zero
};
FluidFields stokes_projection(const FeSpace& V, const FeSpace& Q, double mu, const ProjectionData& data);

/// (K grad R p, grad psi) = (K grad p, grad psi), R p = p on Dirichlet dofs;
/// without Dirichlet dofs the mean of R p matches that of p.
Eigen::VectorXd ritz_projection(const FeSpace& P, const Mat2& K, const PointScalarFn& value, const PointVectorFn& gradient);

}  // namespace fpsi
