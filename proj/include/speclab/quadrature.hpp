#pragma once

#include <vector>

#include <Eigen/Core>

namespace speclab {

/// Gauss-Legendre rule on [-1, 1], exact for polynomials of degree 2n-1.
struct Quad1D {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Golub-Welsch: nodes are the eigenvalues of the Jacobi matrix, weights
/// 2 * (first eigenvector component)^2. Deterministic.
Quad1D gauss_legendre(int n);

struct QuadPoint {
    double x;
    double y;
    double w;
};

/// Rule on the triangle (a, b, c), exact for bivariate polynomials of total
/// degree <= `degree`. Built by collapsing a tensor Gauss-Legendre grid with
/// the Duffy map, then mapping affinely.
std::vector<QuadPoint> triangle_rule(const Eigen::Vector2d& a, const Eigen::Vector2d& b,
                                     const Eigen::Vector2d& c, int degree);

/// Rule on the closed unit disk, exact for polynomials of total degree
/// <= `degree`: Gauss-Legendre in radius times an equispaced periodic rule in
/// angle (exact for the trigonometric degree that arises).
std::vector<QuadPoint> disk_rule(int degree);

} // namespace speclab
