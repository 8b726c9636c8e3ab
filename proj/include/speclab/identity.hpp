#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "speclab/geometry.hpp"

namespace speclab {

/// Dense bivariate polynomial sum c[i][j] x^i y^j. The user-facing test
/// functions are capped at total degree 12 (enforced by `bubble`); products
/// formed internally for the integrands may exceed that.
///
/// Products are commutative bit-for-bit: operator* orders its operands by a
/// canonical key before multiplying, so syntactically identical integrands
/// built in different order yield identical coefficient arrays. Mixed second
/// derivatives are taken in sorted axis order for the same reason.
class Poly2 {
public:
    Poly2() : deg_(0), c_(1, 0.0) {}

    static Poly2 constant(double v);
    static Poly2 monomial(int i, int j, double v);
    /// a*x + b*y + c
    static Poly2 affine(double a, double b, double c);

    /// Structural total degree bound (never underestimates the true degree).
    int degree() const { return deg_; }
    double coeff(int i, int j) const;

    double operator()(double x, double y) const;

    /// d/dx (axis 1) or d/dy (axis 2).
    Poly2 derivative(int axis) const;

    friend Poly2 operator+(const Poly2& a, const Poly2& b);
    friend Poly2 operator-(const Poly2& a, const Poly2& b);
    friend Poly2 operator*(const Poly2& a, const Poly2& b);
    friend bool canonical_less(const Poly2& a, const Poly2& b);

    /// Bound for |p| on |x|,|y| <= box: sum of |c_ij| box^(i+j).
    double magnitude_bound(double box) const;

private:
    explicit Poly2(int deg) : deg_(deg), c_(size_t(deg + 1) * size_t(deg + 1), 0.0) {}

    double& at(int i, int j) { return c_[size_t(i) * (deg_ + 1) + size_t(j)]; }
    double at(int i, int j) const { return c_[size_t(i) * (deg_ + 1) + size_t(j)]; }

    int deg_;
    std::vector<double> c_; // row-major (deg_+1)^2, c[i][j] multiplies x^i y^j
};

/// Second derivative with the axis pair sorted, so d2(p,1,2) and d2(p,2,1)
/// are bit-identical.
Poly2 d2(const Poly2& p, int a, int b);

/// u = extra * prod_i l_i with l_i the affine functional of side i (unit
/// outward normal, positive inside), vanishing on the whole boundary.
/// Throws NotConvex, DegreeOverflow (sides + deg(extra) > 12).
Poly2 bubble(const PolygonDomain& domain, const Poly2& extra = Poly2::constant(1.0));

/// Exact integral over the polygon (triangulated, Duffy-Gauss per triangle)
/// or the unit disk (polar rule), degree certified from the structural
/// degree.
double integrate(const Poly2& p, const PolygonDomain& domain);
double integrate_disk(const Poly2& p);

struct IdentityResult {
    double lhs = 0.0;
    double rhs = 0.0;
    double residual = 0.0; // lhs - rhs
};

/// LHS = int (d_km u)(d_kj u), RHS = int (d_mj u)(d_kk u); axes j,k,m in
/// {1,2}. For polygon domains u must vanish on the boundary (sampled at 100
/// points; BoundaryConditionViolated otherwise). The disk variant checks the
/// unit circle the same way.
IdentityResult identity_residual(const Poly2& u, int j, int k, int m,
                                 const PolygonDomain& domain);
IdentityResult identity_residual_disk(const Poly2& u, int j, int k, int m);

struct IdentityRow {
    std::string domain;
    int j = 0;
    int k = 0;
    int m = 0;
    std::string extra_id;
    double lhs = 0.0;
    double rhs = 0.0;
    double residual = 0.0;
};

/// CSV: domain,j,k,m,extra_id,lhs,rhs,residual
void write_identity_csv(std::ostream& os, const std::vector<IdentityRow>& rows);

} // namespace speclab
