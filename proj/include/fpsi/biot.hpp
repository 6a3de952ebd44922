#pragma once

#include <memory>

#include "fpsi/constraints.hpp"
#include "fpsi/discretization.hpp"

namespace fpsi {

enum class BiotFormulation { four_field, two_field };

/// Poroelastic fields; beta is empty-length-consistent zero in two-field mode.
struct PoroFields {
    Eigen::VectorXd v;
    Eigen::VectorXd u;
    Eigen::VectorXd beta;
    Eigen::VectorXd p;
};

/// Backward-Euler Biot step with Robin data on the interface.
///
/// four_field unknowns (v_p, u_p, beta_p, p_p), beta_p = alpha p - lambda div u
/// in P1. two_field unknowns (v_p, u_p, p_p) with lambda (div u, div w) in the
/// momentum row; beta is returned as zero.
class BiotOperator {
public:
    BiotOperator(std::shared_ptr<const Discretization> disc, BiotFormulation form = BiotFormulation::four_field);

    PoroFields step(const PoroFields& prev, const Eigen::VectorXd& R3, const Eigen::VectorXd& R4,
                    const Eigen::VectorXd& R5, double t_next) const;

    Eigen::VectorXd rhs(const PoroFields& prev, const Eigen::VectorXd& R3, const Eigen::VectorXd& R4,
                        const Eigen::VectorXd& R5, double t_next) const;

    BiotFormulation formulation() const { return form_; }
    const SparseMatrix& matrix() const { return matrix_; }
    const ConstrainedSystem& system() const { return *system_; }
    const Discretization& discretization() const { return *disc_; }

    /// beta solving the constraint row for given u, p (four-field relation).
    Eigen::VectorXd consistent_beta(const Eigen::VectorXd& u, const Eigen::VectorXd& p) const;

private:
    std::shared_ptr<const Discretization> disc_;
    BiotFormulation form_;
    SparseMatrix matrix_;
    std::unique_ptr<ConstrainedSystem> system_;
    std::unique_ptr<SparseLu> p1_mass_;
};

PoroFields biot_step(const BiotOperator& op, const PoroFields& prev, const Eigen::VectorXd& R3,
                     const Eigen::VectorXd& R4, const Eigen::VectorXd& R5, double t_next);

}  // namespace fpsi
