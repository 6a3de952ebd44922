#include "fpsi/constraints.hpp"

#include "fpsi/errors.hpp"

namespace fpsi {

namespace {

void check(const SparseMatrix& a, std::size_t mask_size) {
    if (a.rows() != a.cols()) throw InputError("constrained system must be square");
    if (static_cast<std::size_t>(a.rows()) != mask_size) throw InputError("constraint mask length mismatch");
}

// Splits a into the eliminated operator and the lifting columns.
void split(const SparseMatrix& a, const std::vector<std::uint8_t>& mask, SparseMatrix& reduced, SparseMatrix& lift) {
    std::vector<Triplet> keep, moved;
    keep.reserve(static_cast<std::size_t>(a.nonZeros()));
    for (int r = 0; r < a.outerSize(); ++r) {
        if (mask[r]) {
            keep.emplace_back(r, r, 1.0);
            continue;
        }
        for (SparseMatrix::InnerIterator it(a, r); it; ++it) {
            if (mask[it.col()]) {
                moved.emplace_back(r, it.col(), it.value());
            } else {
                keep.emplace_back(r, it.col(), it.value());
            }
        }
    }
    reduced.resize(a.rows(), a.cols());
    reduced.setFromTriplets(keep.begin(), keep.end());
    reduced.makeCompressed();
    lift.resize(a.rows(), a.cols());
    lift.setFromTriplets(moved.begin(), moved.end());
    lift.makeCompressed();
}

Eigen::VectorXd constrained_rhs(const SparseMatrix& lift, const std::vector<std::uint8_t>& mask,
                                const Eigen::VectorXd& b, const Eigen::VectorXd& values) {
    Eigen::VectorXd g = Eigen::VectorXd::Zero(b.size());
    for (Eigen::Index i = 0; i < b.size(); ++i)
        if (mask[static_cast<std::size_t>(i)]) g[i] = values[i];
    Eigen::VectorXd out = b - lift * g;
    for (Eigen::Index i = 0; i < b.size(); ++i)
        if (mask[static_cast<std::size_t>(i)]) out[i] = g[i];
    return out;
}

}  // namespace

ConstrainedPair apply_dirichlet(const SparseMatrix& a, const Eigen::VectorXd& b, const std::vector<std::uint8_t>& mask,
                                const Eigen::VectorXd& values) {
    check(a, mask.size());
    if (b.size() != a.rows() || values.size() != a.rows()) throw InputError("vector length mismatch");
    ConstrainedPair out;
    SparseMatrix lift;
    split(a, mask, out.a, lift);
    out.b = constrained_rhs(lift, mask, b, values);
    return out;
}

ConstrainedPair apply_dirichlet(const SparseMatrix& a, const Eigen::VectorXd& b, const FeSpace& space,
                                const VectorFn& lift) {
    return apply_dirichlet(a, b, space.dirichlet_mask(), space.interpolate(lift));
}

ConstrainedPair apply_dirichlet(const SparseMatrix& a, const Eigen::VectorXd& b, const FeSpace& space,
                                const ScalarFn& lift) {
    return apply_dirichlet(a, b, space.dirichlet_mask(), space.interpolate(lift));
}

ConstrainedSystem::ConstrainedSystem(const SparseMatrix& a, std::vector<std::uint8_t> mask) : mask_(std::move(mask)) {
    check(a, mask_.size());
    split(a, mask_, a_, lift_);
    lu_ = std::make_unique<SparseLu>(a_);
}

Eigen::VectorXd ConstrainedSystem::solve(const Eigen::VectorXd& b, const Eigen::VectorXd& values) const {
    if (b.size() != a_.rows() || values.size() != a_.rows()) throw InputError("vector length mismatch");
    Eigen::VectorXd x = lu_->solve(constrained_rhs(lift_, mask_, b, values));
    // Identity rows: impose exactly, independent of rounding in the solve.
    for (Eigen::Index i = 0; i < x.size(); ++i)
        if (mask_[static_cast<std::size_t>(i)]) x[i] = values[i];
    return x;
}

}  // namespace fpsi
