#pragma once

#include <cstdint>
#include <vector>

#include "fpsi/mesh.hpp"

namespace fpsi {

enum class ElementKind : std::uint8_t { P1_scalar, P2_scalar, P2_vector };

int polynomial_degree(ElementKind kind);
int local_node_count(ElementKind kind);

/// Lagrange shape functions on the reference triangle at `point`.
///
/// Node order: vertices 0, 1, 2, then (P2) midpoints of edges 01, 12, 20.
/// For P2_vector the scalar P2 functions are returned; the vector basis is
/// their tensor product with the unit vectors.
struct BasisValues {
    std::vector<double> values;
    std::vector<Vec2> gradients;  // reference gradients
};

BasisValues reference_basis(ElementKind kind, const Vec2& point);

/// 1D trace basis on an edge parametrized by s in [0, 1]: nodes (start, end)
/// for degree 1, (start, end, midpoint) for degree 2.
void edge_basis(int degree, double s, double* out);

}  // namespace fpsi
