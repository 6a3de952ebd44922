#pragma once

#include <functional>
#include <variant>

#include <Eigen/Core>

#include "fpsi/fe_space.hpp"
#include "fpsi/linalg.hpp"
#include "fpsi/parallel.hpp"

namespace fpsi {

enum class FormKind {
    mass,
    stiffness_grad,
    stiffness_eps,             // (eps(v), eps(w))
    divergence,                // (q, div w): trial vector, test scalar
    div_div,                   // (div v, div w)
    permeability_stiffness,    // (K grad p, grad psi)
    boundary_mass_normal,      // <v.n, w.n>
    boundary_mass_tangent,     // <v.tau, w.tau>
    boundary_mass_scalar,      // <p, psi>
    interface_normal_scalar,   // <q, w.n>, n of the vector field's side
    interface_tangent_tangent, // <v.tau_trial, w.tau_test>
};

enum class Subdomain { fluid, poro };

using Coefficient = std::variant<double, Mat2>;

struct VolumeLocus {};
struct BoundaryLocus {
    BoundaryTag tag;
};
/// Cross-mesh locus. Each space must live on the mesh of its subdomain.
struct InterfaceLocus {
    const InterfacePairing* pairing = nullptr;
    Subdomain trial = Subdomain::fluid;
    Subdomain test = Subdomain::fluid;
};
using Locus = std::variant<VolumeLocus, BoundaryLocus, InterfaceLocus>;

/// Galerkin matrix with rows indexed by test dofs and columns by trial dofs.
/// Execution::serial runs the plain reference loop; parallel runs chunked
/// OpenMP and gives bitwise the same matrix.
SparseMatrix assemble(FormKind form, const FeSpace& trial, const FeSpace& test, const Coefficient& coefficient = 1.0,
                      const Locus& locus = VolumeLocus{}, Execution exec = Execution::parallel);

using ScalarFn = std::function<double(const Vec2&)>;
using VectorFn = std::function<Vec2(const Vec2&)>;

enum class LoadKind { volume_load, boundary_load_normal, boundary_load_tangent, boundary_load_scalar };

/// (f, psi) over the domain; f scalar for scalar spaces, Vec2 for vector spaces.
Eigen::VectorXd assemble_vector(const FeSpace& space, const ScalarFn& f, Execution exec = Execution::parallel);
Eigen::VectorXd assemble_vector(const FeSpace& space, const VectorFn& f, Execution exec = Execution::parallel);

/// <g, w.n>, <g, w.tau> or <g, psi> over edges tagged `tag`.
Eigen::VectorXd assemble_vector(LoadKind kind, const FeSpace& space, BoundaryTag tag, const ScalarFn& g);

/// (a, grad psi) for a vector field a on a scalar space.
Eigen::VectorXd assemble_gradient_load(const FeSpace& space, const VectorFn& a);
/// (S, grad w) = sum_ab S_ab d_b w_a for a tensor field S on a vector space.
Eigen::VectorXd assemble_tensor_load(const FeSpace& space, const std::function<Mat2(const Vec2&)>& S);

/// Matrix T with T * r = <r_h, w.n> (normal), <r_h, w.tau> (tangent) or
/// <r_h, psi> (scalar), where r_h is the P2 trace interpolant of the nodal
/// values r on the pairing nodes. Normal/tangent are those of `side`.
SparseMatrix trace_load_matrix(LoadKind kind, const FeSpace& space, const InterfacePairing& pairing, Subdomain side);

/// Side-specific trace data.
Vec2 side_normal(const InterfacePairing& pairing, Subdomain side);
Vec2 side_tangent(const InterfacePairing& pairing, Subdomain side);
int side_node(const InterfaceNode& node, Subdomain side);

/// Nodal trace of a field on the pairing nodes: scalar value, v.n or v.tau.
enum class TraceComponent { scalar, normal, tangent };
Eigen::VectorXd interface_trace(const FeSpace& space, const Eigen::VectorXd& coeffs, const InterfacePairing& pairing,
                                Subdomain side, TraceComponent component);

/// Mass matrix of the P2 trace space on the pairing nodes (interface L2 inner product).
SparseMatrix interface_trace_mass(const InterfacePairing& pairing);

}  // namespace fpsi
