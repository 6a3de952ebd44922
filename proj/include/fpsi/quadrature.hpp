#pragma once

#include <vector>

#include "fpsi/mesh.hpp"

namespace fpsi {

enum class QuadratureLocus { triangle, edge };

/// Triangle rules live on the reference triangle {(x, y) : x, y >= 0, x + y <= 1}
/// with weights summing to 1/2. Edge rules live on [0, 1] (stored in x) with
/// weights summing to 1.
struct QuadratureRule {
    std::vector<Vec2> points;
    std::vector<double> weights;
    int degree = 0;

    std::size_t size() const { return weights.size(); }
};

/// Rule exact for polynomials of total degree <= `degree` (1..6).
/// Triangle: 3, 6 or 12 points. Edge: Gauss-Legendre with ceil((degree+1)/2) points.
const QuadratureRule& quadrature(QuadratureLocus locus, int degree);

}  // namespace fpsi
