#pragma once

#include <cstddef>
#include <vector>

namespace blindlink {

struct QuadratureRule {
    std::vector<double> nodes;    // on [-1, 1]
    std::vector<double> weights;  // sum to 2
};

/// Gauss-Legendre rule with n points (1 <= n <= 64), computed once per n and
/// cached. Exact for polynomials of degree 2n - 1.
const QuadratureRule& gauss_legendre(std::size_t n);

/// Integral of f over [a, b] with the n-point Gauss-Legendre rule.
template <typename F>
double integrate(F&& f, double a, double b, std::size_t n) {
    const QuadratureRule& rule = gauss_legendre(n);
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        acc += rule.weights[i] * f(mid + half * rule.nodes[i]);
    }
    return acc * half;
}

}  // namespace blindlink
