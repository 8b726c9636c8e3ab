#include "speclab/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Dense>

namespace speclab {

Quad1D gauss_legendre(int n) {
    if (n < 1) throw std::invalid_argument("rule size must be >= 1");
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
    for (int k = 1; k < n; ++k) {
        const double b = k / std::sqrt(4.0 * k * k - 1.0);
        J(k, k - 1) = J(k - 1, k) = b;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    Quad1D rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        rule.nodes[i] = es.eigenvalues()(i);
        const double v0 = es.eigenvectors()(0, i);
        rule.weights[i] = 2.0 * v0 * v0;
    }
    return rule;
}

std::vector<QuadPoint> triangle_rule(const Eigen::Vector2d& a, const Eigen::Vector2d& b,
                                     const Eigen::Vector2d& c, int degree) {
    if (degree < 0) degree = 0;
    // Duffy map (s,t) in [0,1]^2 -> (u,v) = (s(1-t), st) on the unit triangle,
    // Jacobian s. A monomial u^i v^j with i+j <= D pulls back to s-degree
    // D+1 (with the Jacobian) and t-degree D.
    const int ns = (degree + 3) / 2; // 2*ns - 1 >= degree + 1
    const int nt = (degree + 2) / 2; // 2*nt - 1 >= degree
    const Quad1D qs = gauss_legendre(ns);
    const Quad1D qt = gauss_legendre(std::max(nt, 1));

    const Eigen::Vector2d e1 = b - a;
    const Eigen::Vector2d e2 = c - a;
    const double jac = e1.x() * e2.y() - e1.y() * e2.x(); // 2 * area

    std::vector<QuadPoint> pts;
    pts.reserve(qs.nodes.size() * qt.nodes.size());
    for (size_t is = 0; is < qs.nodes.size(); ++is)
        for (size_t it = 0; it < qt.nodes.size(); ++it) {
            const double s = 0.5 * (qs.nodes[is] + 1.0);
            const double t = 0.5 * (qt.nodes[it] + 1.0);
            const double u = s * (1.0 - t);
            const double v = s * t;
            const double w = 0.25 * qs.weights[is] * qt.weights[it] * s * jac;
            const Eigen::Vector2d p = a + u * e1 + v * e2;
            pts.push_back({p.x(), p.y(), w});
        }
    return pts;
}

std::vector<QuadPoint> disk_rule(int degree) {
    if (degree < 0) degree = 0;
    // x^i y^j, i+j <= D: radial integrand r^{i+j+1} (degree D+1), angular
    // integrand a trigonometric polynomial of degree <= D, integrated exactly
    // by N >= D+1 equispaced points.
    const int nr = (degree + 3) / 2; // 2*nr - 1 >= degree + 1
    const int na = degree + 2;
    const Quad1D qr = gauss_legendre(nr);

    std::vector<QuadPoint> pts;
    pts.reserve(qr.nodes.size() * static_cast<size_t>(na));
    const double wa = 2.0 * std::numbers::pi / na;
    for (size_t ir = 0; ir < qr.nodes.size(); ++ir) {
        const double r = 0.5 * (qr.nodes[ir] + 1.0);
        const double wr = 0.5 * qr.weights[ir] * r;
        for (int ia = 0; ia < na; ++ia) {
            const double th = wa * ia;
            pts.push_back({r * std::cos(th), r * std::sin(th), wr * wa});
        }
    }
    return pts;
}

} // namespace speclab
