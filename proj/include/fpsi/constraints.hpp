#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include <Eigen/Core>

#include "fpsi/assembly.hpp"
#include "fpsi/linalg.hpp"

namespace fpsi {

struct ConstrainedPair {
    SparseMatrix a;
    Eigen::VectorXd b;
};

/// Symmetric elimination: constrained rows and columns become identity, the
/// known values move to the right-hand side. Idempotent.
ConstrainedPair apply_dirichlet(const SparseMatrix& a, const Eigen::VectorXd& b, const std::vector<std::uint8_t>& mask,
                                const Eigen::VectorXd& values);

/// Same, for a single field with lift values taken from `lift` at the dofs.
ConstrainedPair apply_dirichlet(const SparseMatrix& a, const Eigen::VectorXd& b, const FeSpace& space,
                                const VectorFn& lift);
ConstrainedPair apply_dirichlet(const SparseMatrix& a, const Eigen::VectorXd& b, const FeSpace& space,
                                const ScalarFn& lift);

/// Factorized constrained operator reused across right-hand sides.
class ConstrainedSystem {
public:
    ConstrainedSystem(const SparseMatrix& a, std::vector<std::uint8_t> mask);

    /// Solves with values[i] imposed wherever mask[i] is set.
    Eigen::VectorXd solve(const Eigen::VectorXd& b, const Eigen::VectorXd& values) const;

    const SparseMatrix& matrix() const { return a_; }
    const std::vector<std::uint8_t>& mask() const { return mask_; }
    const SparseLu& factorization() const { return *lu_; }
    int size() const { return static_cast<int>(a_.rows()); }

private:
    SparseMatrix a_;
    SparseMatrix lift_;  // free rows x constrained columns of a_
    std::vector<std::uint8_t> mask_;
    std::unique_ptr<SparseLu> lu_;
};

}  // namespace fpsi
