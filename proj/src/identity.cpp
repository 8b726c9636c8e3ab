#include "speclab/identity.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "speclab/format.hpp"
#include "speclab/mesh.hpp"
#include "speclab/quadrature.hpp"

namespace speclab {

Poly2 Poly2::constant(double v) {
    Poly2 p(0);
    p.at(0, 0) = v;
    return p;
}

Poly2 Poly2::monomial(int i, int j, double v) {
    if (i < 0 || j < 0) throw std::invalid_argument("negative exponent");
    Poly2 p(i + j);
    p.at(i, j) = v;
    return p;
}

Poly2 Poly2::affine(double a, double b, double c) {
    Poly2 p(1);
    p.at(1, 0) = a;
    p.at(0, 1) = b;
    p.at(0, 0) = c;
    return p;
}

double Poly2::coeff(int i, int j) const {
    if (i < 0 || j < 0 || i + j > deg_) return 0.0;
    return at(i, j);
}

double Poly2::operator()(double x, double y) const {
    // Horner in x of Horner-in-y rows.
    double acc = 0.0;
    for (int i = deg_; i >= 0; --i) {
        double row = 0.0;
        for (int j = deg_ - i; j >= 0; --j) row = row * y + at(i, j);
        acc = acc * x + row;
    }
    return acc;
}

Poly2 Poly2::derivative(int axis) const {
    if (axis != 1 && axis != 2) throw std::invalid_argument("axis must be 1 or 2");
    Poly2 r(std::max(deg_ - 1, 0));
    for (int i = 0; i <= deg_; ++i)
        for (int j = 0; j <= deg_ - i; ++j) {
            const double c = at(i, j);
            if (c == 0.0) continue;
            if (axis == 1 && i > 0) r.at(i - 1, j) += c * i;
            if (axis == 2 && j > 0) r.at(i, j - 1) += c * j;
        }
    return r;
}

Poly2 operator+(const Poly2& a, const Poly2& b) {
    Poly2 r(std::max(a.deg_, b.deg_));
    for (int i = 0; i <= r.deg_; ++i)
        for (int j = 0; j <= r.deg_ - i; ++j) r.at(i, j) = a.coeff(i, j) + b.coeff(i, j);
    return r;
}

Poly2 operator-(const Poly2& a, const Poly2& b) {
    Poly2 r(std::max(a.deg_, b.deg_));
    for (int i = 0; i <= r.deg_; ++i)
        for (int j = 0; j <= r.deg_ - i; ++j) r.at(i, j) = a.coeff(i, j) - b.coeff(i, j);
    return r;
}

bool canonical_less(const Poly2& a, const Poly2& b) {
    if (a.deg_ != b.deg_) return a.deg_ < b.deg_;
    return std::lexicographical_compare(a.c_.begin(), a.c_.end(), b.c_.begin(), b.c_.end());
}

Poly2 operator*(const Poly2& a, const Poly2& b) {
    const Poly2& lo = canonical_less(b, a) ? b : a;
    const Poly2& hi = canonical_less(b, a) ? a : b;
    Poly2 r(lo.deg_ + hi.deg_);
    for (int i1 = 0; i1 <= lo.deg_; ++i1)
        for (int j1 = 0; j1 <= lo.deg_ - i1; ++j1) {
            const double c1 = lo.at(i1, j1);
            if (c1 == 0.0) continue;
            for (int i2 = 0; i2 <= hi.deg_; ++i2)
                for (int j2 = 0; j2 <= hi.deg_ - i2; ++j2) {
                    const double c2 = hi.at(i2, j2);
                    if (c2 == 0.0) continue;
                    r.at(i1 + i2, j1 + j2) += c1 * c2;
                }
        }
    return r;
}

double Poly2::magnitude_bound(double box) const {
    double s = 0.0;
    for (int i = 0; i <= deg_; ++i)
        for (int j = 0; j <= deg_ - i; ++j)
            s += std::abs(at(i, j)) * std::pow(box, i + j);
    return s;
}

Poly2 d2(const Poly2& p, int a, int b) {
    if (a > b) std::swap(a, b);
    return p.derivative(a).derivative(b);
}

Poly2 bubble(const PolygonDomain& domain, const Poly2& extra) {
    if (!is_convex(domain))
        throw Error(ErrorCode::NotConvex, "bubble construction requires a convex polygon");
    const int s = domain.num_segments();
    if (s + extra.degree() > 12)
        throw Error(ErrorCode::DegreeOverflow,
                    "bubble degree " + std::to_string(s + extra.degree()) + " exceeds 12");
    Poly2 u = extra;
    for (int i = 0; i < s; ++i) {
        // l_i(x) = n_i . (p_i - x): zero on side i, positive inside (outward
        // unit normal n_i).
        const Eigen::Vector2d n = domain.segment_normal(i);
        const Eigen::Vector2d p = domain.segment_start(i);
        u = u * Poly2::affine(-n.x(), -n.y(), n.dot(p));
    }
    return u;
}

double integrate(const Poly2& p, const PolygonDomain& domain) {
    const Mesh mesh = triangulate(domain);
    double total = 0.0;
    for (const auto& t : mesh.triangles) {
        const auto rule = triangle_rule(mesh.nodes[t[0]], mesh.nodes[t[1]], mesh.nodes[t[2]],
                                        p.degree());
        for (const auto& q : rule) total += q.w * p(q.x, q.y);
    }
    return total;
}

double integrate_disk(const Poly2& p) {
    double total = 0.0;
    for (const auto& q : disk_rule(p.degree())) total += q.w * p(q.x, q.y);
    return total;
}

namespace {

void check_axes(int j, int k, int m) {
    for (int a : {j, k, m})
        if (a != 1 && a != 2) throw std::invalid_argument("axis indices must be 1 or 2");
}

IdentityResult residual_with(const Poly2& u, int j, int k, int m, const PolygonDomain* polygon) {
    check_axes(j, k, m);
    const Poly2 lhs_integrand = d2(u, k, m) * d2(u, k, j);
    const Poly2 rhs_integrand = d2(u, m, j) * d2(u, k, k);
    IdentityResult r;
    if (polygon) {
        r.lhs = integrate(lhs_integrand, *polygon);
        r.rhs = integrate(rhs_integrand, *polygon);
    } else {
        r.lhs = integrate_disk(lhs_integrand);
        r.rhs = integrate_disk(rhs_integrand);
    }
    r.residual = r.lhs - r.rhs;
    return r;
}

} // namespace

IdentityResult identity_residual(const Poly2& u, int j, int k, int m,
                                 const PolygonDomain& domain) {
    // Hypothesis u in H^1_0: sample 100 boundary points spread along the
    // perimeter proportionally to arc length.
    double box = 1.0;
    for (const auto& v : domain.vertices()) box = std::max({box, std::abs(v.x()), std::abs(v.y())});
    const double tol = 1e-10 * u.magnitude_bound(box);

    const double total_length = domain.boundary_length();
    int seg = 0;
    double seg_start = 0.0;
    for (int i = 0; i < 100; ++i) {
        const double s = (i + 0.5) / 100.0 * total_length;
        while (seg + 1 < domain.num_segments() && seg_start + domain.segment_length(seg) < s) {
            seg_start += domain.segment_length(seg);
            ++seg;
        }
        const double t = (s - seg_start) / domain.segment_length(seg);
        const Eigen::Vector2d p =
            domain.segment_start(seg) + t * (domain.segment_end(seg) - domain.segment_start(seg));
        if (std::abs(u(p.x(), p.y())) >= tol)
            throw Error(ErrorCode::BoundaryConditionViolated,
                        "test function does not vanish on the boundary (|u| = " +
                            fmt_g17(std::abs(u(p.x(), p.y()))) + " at boundary point)");
    }
    return residual_with(u, j, k, m, &domain);
}

IdentityResult identity_residual_disk(const Poly2& u, int j, int k, int m) {
    const double tol = 1e-10 * u.magnitude_bound(1.0);
    for (int i = 0; i < 100; ++i) {
        const double th = 2.0 * std::numbers::pi * (i + 0.5) / 100.0;
        if (std::abs(u(std::cos(th), std::sin(th))) >= tol)
            throw Error(ErrorCode::BoundaryConditionViolated,
                        "test function does not vanish on the unit circle");
    }
    return residual_with(u, j, k, m, nullptr);
}

void write_identity_csv(std::ostream& os, const std::vector<IdentityRow>& rows) {
    os << "domain,j,k,m,extra_id,lhs,rhs,residual\n";
    for (const auto& r : rows)
        os << r.domain << "," << r.j << "," << r.k << "," << r.m << "," << r.extra_id << ","
           << fmt_g17(r.lhs) << "," << fmt_g17(r.rhs) << "," << fmt_g17(r.residual) << "\n";
}

} // namespace speclab
