#include "fpsi/quadrature.hpp"

#include <array>
#include <cmath>
#include <string>

#include "fpsi/errors.hpp"

namespace fpsi {

namespace {

void orbit3(QuadratureRule& r, double a, double w) {
    r.points.emplace_back(a, a);
    r.points.emplace_back(1.0 - 2.0 * a, a);
    r.points.emplace_back(a, 1.0 - 2.0 * a);
    r.weights.insert(r.weights.end(), 3, w);
}

void orbit6(QuadratureRule& r, double a, double b, double w) {
    const double c = 1.0 - a - b;
    for (const auto& [p, q] : std::array<std::array<double, 2>, 6>{{{a, b}, {b, a}, {a, c}, {c, a}, {b, c}, {c, b}}}) {
        r.points.emplace_back(p, q);
    }
    r.weights.insert(r.weights.end(), 6, w);
}

QuadratureRule make_triangle(int degree) {
    QuadratureRule r;
    if (degree <= 2) {
        r.degree = 2;
        orbit3(r, 1.0 / 6.0, 1.0 / 6.0);
    } else if (degree <= 4) {
        // Dunavant degree 4, weights already scaled by the reference area.
        r.degree = 4;
        orbit3(r, 0.44594849091596488632, 0.11169079483900573285);
        orbit3(r, 0.09157621350977074346, 0.054975871827660933819);
    } else {
        // Dunavant degree 6.
        r.degree = 6;
        orbit3(r, 0.24928674517091042129, 0.058393137863189683013);
        orbit3(r, 0.06308901449150222834, 0.02542245318510340846);
        orbit6(r, 0.053145049844816947353, 0.31035245103378440542, 0.041425537809186787597);
    }
    return r;
}

QuadratureRule make_edge(int degree) {
    const int n = (degree + 2) / 2;
    std::vector<double> x, w;
    switch (n) {
        case 1: x = {0.0}; w = {2.0}; break;
        case 2: x = {-1.0 / std::sqrt(3.0), 1.0 / std::sqrt(3.0)}; w = {1.0, 1.0}; break;
        case 3:
            x = {-std::sqrt(0.6), 0.0, std::sqrt(0.6)};
            w = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
            break;
        default: {
            const double a = std::sqrt(3.0 / 7.0 - 2.0 / 7.0 * std::sqrt(1.2));
            const double b = std::sqrt(3.0 / 7.0 + 2.0 / 7.0 * std::sqrt(1.2));
            const double wa = (18.0 + std::sqrt(30.0)) / 36.0;
            const double wb = (18.0 - std::sqrt(30.0)) / 36.0;
            x = {-b, -a, a, b};
            w = {wb, wa, wa, wb};
        }
    }
    QuadratureRule r;
    r.degree = 2 * n - 1;
    for (std::size_t i = 0; i < x.size(); ++i) {
        r.points.emplace_back(0.5 * (x[i] + 1.0), 0.0);
        r.weights.push_back(0.5 * w[i]);
    }
    return r;
}

}  // namespace

const QuadratureRule& quadrature(QuadratureLocus locus, int degree) {
    if (degree < 1 || degree > 6) throw InputError("quadrature degree must be in [1, 6], got " + std::to_string(degree));
    static const std::array<QuadratureRule, 6> tri = {make_triangle(1), make_triangle(2), make_triangle(3),
                                                      make_triangle(4), make_triangle(5), make_triangle(6)};
    static const std::array<QuadratureRule, 6> edge = {make_edge(1), make_edge(2), make_edge(3),
                                                       make_edge(4), make_edge(5), make_edge(6)};
    return locus == QuadratureLocus::triangle ? tri[degree - 1] : edge[degree - 1];
}

}  // namespace fpsi
