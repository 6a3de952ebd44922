#include "fpsi/basis.hpp"

namespace fpsi {

int polynomial_degree(ElementKind kind) { return kind == ElementKind::P1_scalar ? 1 : 2; }

int local_node_count(ElementKind kind) { return kind == ElementKind::P1_scalar ? 3 : 6; }

BasisValues reference_basis(ElementKind kind, const Vec2& p) {
    const double l1 = p.x();
    const double l2 = p.y();
    const double l0 = 1.0 - l1 - l2;
    const Vec2 g0(-1.0, -1.0), g1(1.0, 0.0), g2(0.0, 1.0);
    BasisValues b;
    if (kind == ElementKind::P1_scalar) {
        b.values = {l0, l1, l2};
        b.gradients = {g0, g1, g2};
        return b;
    }
    b.values = {l0 * (2.0 * l0 - 1.0), l1 * (2.0 * l1 - 1.0), l2 * (2.0 * l2 - 1.0),
                4.0 * l0 * l1,         4.0 * l1 * l2,         4.0 * l2 * l0};
    b.gradients = {(4.0 * l0 - 1.0) * g0, (4.0 * l1 - 1.0) * g1, (4.0 * l2 - 1.0) * g2,
                   4.0 * (l0 * g1 + l1 * g0), 4.0 * (l1 * g2 + l2 * g1), 4.0 * (l2 * g0 + l0 * g2)};
    return b;
}

void edge_basis(int degree, double s, double* out) {
    if (degree == 1) {
        out[0] = 1.0 - s;
        out[1] = s;
        return;
    }
    out[0] = (1.0 - s) * (1.0 - 2.0 * s);
    out[1] = s * (2.0 * s - 1.0);
    out[2] = 4.0 * s * (1.0 - s);
}

}  // namespace fpsi
