#pragma once

#include <memory>
#include <optional>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

namespace fpsi {

/// Compressed sparse row storage.
using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor, int>;
using Triplet = Eigen::Triplet<double, int>;

/// Grid of optional blocks; empty blocks are zero.
struct BlockSystem {
    std::vector<int> row_sizes;
    std::vector<int> col_sizes;
    std::vector<std::optional<SparseMatrix>> blocks;  // row-major grid
    Eigen::VectorXd rhs;

    BlockSystem(std::vector<int> rows, std::vector<int> cols);

    void set(int i, int j, SparseMatrix block);
    /// Adds to an existing block (or sets it).
    void add(int i, int j, const SparseMatrix& block);
    const std::optional<SparseMatrix>& block(int i, int j) const;
    int row_offset(int i) const;
    int col_offset(int j) const;
    int rows() const;
    int cols() const;
};

struct FlatSystem {
    SparseMatrix matrix;
    Eigen::VectorXd rhs;
};

FlatSystem flatten(const BlockSystem& system);

/// Sparse LU (COLAMD ordering, partial pivoting) of a square matrix, with row
/// equilibration and iterative refinement in solve().
class SparseLu {
public:
    explicit SparseLu(const SparseMatrix& a);
    ~SparseLu();
    SparseLu(const SparseLu&) = delete;
    SparseLu& operator=(const SparseLu&) = delete;

    Eigen::VectorXd solve(const Eigen::VectorXd& b) const;
    int size() const { return static_cast<int>(a_.rows()); }
    /// max |U_jj| / min |U_jj| of the row-equilibrated factorization.
    double pivot_ratio() const { return max_pivot_ / min_pivot_; }
    const SparseMatrix& matrix() const { return a_; }

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
    SparseMatrix a_;
    Eigen::VectorXd row_scale_;
    double max_pivot_ = 0.0;
    double min_pivot_ = 0.0;
};

/// Relative residual contract for solve_sparse.
inline constexpr double kSolveResidualTolerance = 1e-10;

double relative_residual(const SparseMatrix& a, const Eigen::VectorXd& x, const Eigen::VectorXd& b);

/// One-shot solve; throws SolverError if the residual contract fails.
Eigen::VectorXd solve_sparse(const SparseMatrix& a, const Eigen::VectorXd& b);

SparseMatrix identity_matrix(int n);

}  // namespace fpsi
