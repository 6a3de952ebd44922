#pragma once

#include <memory>

#include "fpsi/assembly.hpp"
#include "fpsi/physics/scenario.hpp"

namespace fpsi {

/// Time-independent matrices of the fluid side. Rows test, columns trial.
struct FluidMatrices {
    SparseMatrix mass;      // (v, w), vector P2
    SparseMatrix eps;       // (eps v, eps w)
    SparseMatrix div;       // (q, div w): P1 rows, P2 vector columns
    SparseMatrix gamma_n;   // <v.n_f, w.n_f>
    SparseMatrix gamma_t;   // <v.tau_f, w.tau_f>
    SparseMatrix trace_n;   // nodal r -> <r, w.n_f>
    SparseMatrix trace_t;   // nodal r -> <r, w.tau_f>
    SparseMatrix p1_mass;
};

struct PoroMatrices {
    SparseMatrix mass;      // vector P2
    SparseMatrix eps;
    SparseMatrix div_div;
    SparseMatrix div_p1;    // (phi, div w)
    SparseMatrix div_p2;    // (psi, div w)
    SparseMatrix m11;       // P1 x P1
    SparseMatrix m12;       // P1 rows, P2 columns
    SparseMatrix m21;       // P2 rows, P1 columns
    SparseMatrix m22;       // P2 x P2
    SparseMatrix darcy;     // (mu_f^-1 K grad p, grad psi)
    SparseMatrix gamma_n;   // <u.n_p, w.n_p>
    SparseMatrix gamma_t;   // <u.tau_p, w.tau_p>
    SparseMatrix gamma_s;   // <p, psi>
    SparseMatrix trace_n;
    SparseMatrix trace_t;
    SparseMatrix trace_s;
};

/// Meshes, spaces, interface pairing and the constant matrices of one scenario.
struct Discretization {
    Scenario scenario;
    std::shared_ptr<const Mesh2D> mesh_f;
    std::shared_ptr<const Mesh2D> mesh_p;
    InterfacePairing pairing;
    FeSpace vf;   // P2 vector, fluid velocity
    FeSpace qf;   // P1, fluid pressure
    FeSpace vp;   // P2 vector, poroelastic velocity and displacement
    FeSpace bp;   // P1, total pressure
    FeSpace pp;   // P2, pore pressure
    double c_bjs = 0.0;
    FluidMatrices fluid;
    PoroMatrices poro;
    SparseMatrix trace_mass;  // interface L2 on the pairing nodes

    static std::shared_ptr<const Discretization> build(const Scenario& scenario, Execution exec = Execution::parallel);

private:
    Discretization(const Scenario& s, std::shared_ptr<const Mesh2D> f, std::shared_ptr<const Mesh2D> p);
};

/// Interpolated time-dependent data helpers (empty function means zero).
Eigen::VectorXd interpolate_at(const FeSpace& space, const VectorData& f, double t);
Eigen::VectorXd interpolate_at(const FeSpace& space, const ScalarData& f, double t);
Eigen::VectorXd load_at(const FeSpace& space, const VectorData& f, double t);
Eigen::VectorXd load_at(const FeSpace& space, const ScalarData& f, double t);
Eigen::VectorXd traction_load(const FeSpace& space, const std::vector<NormalTraction>& tractions, double t);
/// Nodal values of the interface source on the pairing nodes.
Eigen::VectorXd interface_source_nodes(const Discretization& d, double t);

}  // namespace fpsi
