#include "fpsi/linalg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include <umfpack.h>

#include "fpsi/errors.hpp"

namespace fpsi {

namespace {

using ColMatrix = Eigen::SparseMatrix<double, Eigen::ColMajor, int>;

constexpr double kSingularPivotRatio = 1e-14;
constexpr int kRefinementSteps = 3;

}  // namespace

BlockSystem::BlockSystem(std::vector<int> rows, std::vector<int> cols)
    : row_sizes(std::move(rows)), col_sizes(std::move(cols)) {
    blocks.resize(row_sizes.size() * col_sizes.size());
    rhs = Eigen::VectorXd::Zero(this->rows());
}

void BlockSystem::set(int i, int j, SparseMatrix block) {
    if (i < 0 || j < 0 || i >= static_cast<int>(row_sizes.size()) || j >= static_cast<int>(col_sizes.size()))
        throw InputError("block index out of range");
    if (block.rows() != row_sizes[i] || block.cols() != col_sizes[j])
        throw InputError("block (" + std::to_string(i) + "," + std::to_string(j) + ") has shape " +
                         std::to_string(block.rows()) + "x" + std::to_string(block.cols()) + ", expected " +
                         std::to_string(row_sizes[i]) + "x" + std::to_string(col_sizes[j]));
    blocks[static_cast<std::size_t>(i) * col_sizes.size() + j] = std::move(block);
}

void BlockSystem::add(int i, int j, const SparseMatrix& block) {
    auto& slot = blocks.at(static_cast<std::size_t>(i) * col_sizes.size() + j);
    if (slot) {
        if (block.rows() != slot->rows() || block.cols() != slot->cols()) throw InputError("block shape mismatch");
        *slot += block;
    } else {
        set(i, j, block);
    }
}

const std::optional<SparseMatrix>& BlockSystem::block(int i, int j) const {
    return blocks.at(static_cast<std::size_t>(i) * col_sizes.size() + j);
}

int BlockSystem::row_offset(int i) const {
    int o = 0;
    for (int k = 0; k < i; ++k) o += row_sizes[k];
    return o;
}

int BlockSystem::col_offset(int j) const {
    int o = 0;
    for (int k = 0; k < j; ++k) o += col_sizes[k];
    return o;
}

int BlockSystem::rows() const { return row_offset(static_cast<int>(row_sizes.size())); }
int BlockSystem::cols() const { return col_offset(static_cast<int>(col_sizes.size())); }

FlatSystem flatten(const BlockSystem& s) {
    if (s.blocks.size() != s.row_sizes.size() * s.col_sizes.size()) throw InputError("block grid size mismatch");
    if (s.rhs.size() != s.rows()) throw InputError("right-hand side length does not match block rows");
    std::vector<Triplet> trips;
    std::size_t nnz = 0;
    for (const auto& b : s.blocks) nnz += b ? static_cast<std::size_t>(b->nonZeros()) : 0;
    trips.reserve(nnz);
    for (std::size_t i = 0; i < s.row_sizes.size(); ++i) {
        const int ro = s.row_offset(static_cast<int>(i));
        for (std::size_t j = 0; j < s.col_sizes.size(); ++j) {
            const auto& b = s.block(static_cast<int>(i), static_cast<int>(j));
            if (!b) continue;
            if (b->rows() != s.row_sizes[i] || b->cols() != s.col_sizes[j]) throw InputError("inconsistent block size");
            const int co = s.col_offset(static_cast<int>(j));
            for (int r = 0; r < b->outerSize(); ++r)
                for (SparseMatrix::InnerIterator it(*b, r); it; ++it) trips.emplace_back(ro + r, co + it.col(), it.value());
        }
    }
    FlatSystem out;
    out.matrix.resize(s.rows(), s.cols());
    out.matrix.setFromTriplets(trips.begin(), trips.end());
    out.matrix.makeCompressed();
    out.rhs = s.rhs;
    return out;
}

struct SparseLu::Impl {
    ColMatrix scaled;
    void* symbolic = nullptr;
    void* numeric = nullptr;
    std::array<double, UMFPACK_CONTROL> control{};
    ~Impl() {
        if (numeric) umfpack_di_free_numeric(&numeric);
        if (symbolic) umfpack_di_free_symbolic(&symbolic);
    }
    Eigen::VectorXd solve(const Eigen::VectorXd& b) const {
        Eigen::VectorXd x(b.size());
        std::array<double, UMFPACK_INFO> info{};
        const int status = umfpack_di_solve(UMFPACK_A, scaled.outerIndexPtr(), scaled.innerIndexPtr(), scaled.valuePtr(),
                                            x.data(), b.data(), numeric, control.data(), info.data());
        if (status < 0) throw SolverError("sparse triangular solve failed (status " + std::to_string(status) + ")");
        return x;
    }
};

SparseLu::SparseLu(const SparseMatrix& a) : impl_(std::make_unique<Impl>()), a_(a) {
    if (a.rows() != a.cols()) throw InputError("SparseLu needs a square matrix");
    a_.makeCompressed();
    const int n = static_cast<int>(a.rows());
    row_scale_.resize(n);
    for (int r = 0; r < n; ++r) {
        double m = 0.0;
        for (SparseMatrix::InnerIterator it(a_, r); it; ++it) m = std::max(m, std::abs(it.value()));
        if (!(m > 0.0) || !std::isfinite(m))
            throw SingularSystemError("row " + std::to_string(r) + " is empty or not finite");
        row_scale_[r] = 1.0 / m;
    }
    Impl& im = *impl_;
    im.scaled = (row_scale_.asDiagonal() * a_).eval();
    im.scaled.makeCompressed();
    umfpack_di_defaults(im.control.data());
    // The rows are already equilibrated.
    im.control[UMFPACK_SCALE] = UMFPACK_SCALE_NONE;
    im.control[UMFPACK_IRSTEP] = 0;
    std::array<double, UMFPACK_INFO> info{};
    const int* ap = im.scaled.outerIndexPtr();
    const int* ai = im.scaled.innerIndexPtr();
    const double* ax = im.scaled.valuePtr();
    int status = umfpack_di_symbolic(n, n, ap, ai, ax, &im.symbolic, im.control.data(), info.data());
    if (status != UMFPACK_OK) throw SingularSystemError("sparse LU analysis failed (status " + std::to_string(status) + ")");
    status = umfpack_di_numeric(ap, ai, ax, im.symbolic, &im.numeric, im.control.data(), info.data());
    if (status == UMFPACK_WARNING_singular_matrix) throw SingularSystemError("structurally or exactly singular matrix");
    if (status != UMFPACK_OK) throw SingularSystemError("sparse LU failed (status " + std::to_string(status) + ")");

    max_pivot_ = info[UMFPACK_UMAX];
    min_pivot_ = info[UMFPACK_UMIN];
    if (!(min_pivot_ >= kSingularPivotRatio * max_pivot_) || !(max_pivot_ > 0.0))
        throw SingularSystemError("numerically singular matrix (pivot ratio " + std::to_string(min_pivot_ / max_pivot_) +
                                  ")");
}

SparseLu::~SparseLu() = default;

Eigen::VectorXd SparseLu::solve(const Eigen::VectorXd& b) const {
    if (b.size() != a_.rows()) throw InputError("right-hand side length mismatch");
    Eigen::VectorXd x = impl_->solve((row_scale_.array() * b.array()).matrix());
    const double bnorm = std::max(b.norm(), 1e-30);
    for (int k = 0; k < kRefinementSteps; ++k) {
        const Eigen::VectorXd r = b - a_ * x;
        if (r.norm() <= 1e-14 * bnorm) break;
        x += impl_->solve((row_scale_.array() * r.array()).matrix());
    }
    return x;
}

double relative_residual(const SparseMatrix& a, const Eigen::VectorXd& x, const Eigen::VectorXd& b) {
    return (a * x - b).norm() / std::max(b.norm(), 1e-30);
}

Eigen::VectorXd solve_sparse(const SparseMatrix& a, const Eigen::VectorXd& b) {
    SparseLu lu(a);
    Eigen::VectorXd x = lu.solve(b);
    const double res = relative_residual(a, x, b);
    if (!(res <= kSolveResidualTolerance))
        throw SolverError("relative residual " + std::to_string(res) + " exceeds tolerance");
    return x;
}

SparseMatrix identity_matrix(int n) {
    SparseMatrix m(n, n);
    m.setIdentity();
    return m;
}

}  // namespace fpsi
