#include <doctest.h>

#include <cmath>
#include <numbers>

#include "speclab/identity.hpp"

using namespace speclab;
using Eigen::Vector2d;

namespace {

const double kPi = std::numbers::pi;

std::vector<BoundaryLabel> all_d(int n) {
    return std::vector<BoundaryLabel>(n, BoundaryLabel::Dirichlet);
}

PolygonDomain unit_square() {
    return build_polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, all_d(4));
}

PolygonDomain pi_square() {
    return build_polygon({{0, 0}, {kPi, 0}, {kPi, kPi}, {0, kPi}}, all_d(4));
}

} // namespace

TEST_CASE("poly2 evaluation, arithmetic and derivatives") {
    const Poly2 p = Poly2::monomial(2, 1, 3.0) + Poly2::affine(1.0, -2.0, 0.5);
    // p = 3 x^2 y + x - 2y + 1/2
    CHECK(p(1.0, 1.0) == doctest::Approx(3.0 + 1.0 - 2.0 + 0.5));
    CHECK(p(2.0, -1.0) == doctest::Approx(3.0 * 4.0 * -1.0 + 2.0 + 2.0 + 0.5));
    CHECK(p.coeff(2, 1) == 3.0);
    CHECK(p.coeff(1, 0) == 1.0);
    CHECK(p.degree() == 3);

    const Poly2 px = p.derivative(1); // 6xy + 1
    CHECK(px(2.0, 3.0) == doctest::Approx(37.0));
    const Poly2 py = p.derivative(2); // 3x^2 - 2
    CHECK(py(2.0, 100.0) == doctest::Approx(10.0));

    const Poly2 prod = px * py;
    CHECK(prod(1.5, -0.5) == doctest::Approx(px(1.5, -0.5) * py(1.5, -0.5)));

    CHECK(p.magnitude_bound(1.0) == doctest::Approx(3.0 + 1.0 + 2.0 + 0.5));
    CHECK(p.magnitude_bound(2.0) == doctest::Approx(3.0 * 8 + 2 + 4 + 0.5));
}

TEST_CASE("products are canonically ordered, so operands commute bit-for-bit") {
    const Poly2 a = Poly2::monomial(3, 2, 1.25) + Poly2::affine(0.5, -1.0, 2.0);
    const Poly2 b = Poly2::monomial(1, 4, -0.75) + Poly2::constant(1.0 / 3.0);
    const Poly2 ab = a * b;
    const Poly2 ba = b * a;
    for (int i = 0; i <= ab.degree(); ++i)
        for (int j = 0; i + j <= ab.degree(); ++j) {
            // bit-for-bit, not approximately
            CHECK(ab.coeff(i, j) == ba.coeff(i, j));
        }
}

TEST_CASE("mixed second derivatives commute bit-for-bit via sorted axes") {
    const Poly2 p = Poly2::monomial(4, 3, 0.3) + Poly2::monomial(2, 5, -1.1) +
                    Poly2::monomial(1, 1, std::sqrt(2.0));
    const Poly2 d12 = d2(p, 1, 2);
    const Poly2 d21 = d2(p, 2, 1);
    for (int i = 0; i <= d12.degree(); ++i)
        for (int j = 0; i + j <= d12.degree(); ++j) CHECK(d12.coeff(i, j) == d21.coeff(i, j));
}

TEST_CASE("bubble vanishes on the boundary and is positive inside") {
    const PolygonDomain sq = unit_square();
    const Poly2 u = bubble(sq);
    CHECK(u.degree() == 4);
    // u = x(1-x)y(1-y) up to sign/order of factors
    CHECK(u(0.5, 0.5) == doctest::Approx(0.0625));
    CHECK(std::abs(u(0.0, 0.3)) < 1e-15);
    CHECK(std::abs(u(0.7, 1.0)) < 1e-15);
    CHECK(u(0.25, 0.75) > 0.0);

    SUBCASE("extra factor multiplies in") {
        const Poly2 ux = bubble(sq, Poly2::monomial(1, 0, 1.0));
        CHECK(ux(0.5, 0.5) == doctest::Approx(0.03125));
        CHECK(ux.degree() == 5);
    }
    SUBCASE("nonconvex domains are rejected") {
        const PolygonDomain l = build_polygon(
            {{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}}, all_d(6));
        try {
            bubble(l);
            FAIL("expected a throw");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::NotConvex);
        }
    }
    SUBCASE("degree cap") {
        try {
            bubble(sq, Poly2::monomial(5, 4, 1.0)); // 4 + 9 = 13 > 12
            FAIL("expected a throw");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::DegreeOverflow);
        }
    }
}

TEST_CASE("polygon integration agrees with hand integrals") {
    const PolygonDomain sq = unit_square();
    CHECK(integrate(Poly2::constant(1.0), sq) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(integrate(Poly2::monomial(1, 0, 1.0), sq) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(integrate(Poly2::monomial(2, 2, 1.0), sq) == doctest::Approx(1.0 / 9.0).epsilon(1e-13));
    // int_0^1 int_0^1 x(1-x)y(1-y) = (1/6)^2
    CHECK(integrate(bubble(sq), sq) == doctest::Approx(1.0 / 36.0).epsilon(1e-13));
    // disk: int (1 - x^2 - y^2) = pi/2
    const Poly2 w = Poly2::constant(1.0) - Poly2::monomial(2, 0, 1.0) - Poly2::monomial(0, 2, 1.0);
    CHECK(integrate_disk(w) == doctest::Approx(kPi / 2.0).epsilon(1e-13));
}

TEST_CASE("square bubble identity values match the closed form") {
    // u = x(pi-x)y(pi-y): for (j,k,m) = (1,2,1) the left side is
    // int u_21^2 = (int (pi-2t)^2 dt)^2 = pi^6/9 and the right side is
    // int u_11 u_22 = 4 (int t(pi-t) dt)^2 = pi^6/9 as well.
    const Poly2 u = bubble(pi_square());
    const IdentityResult r = identity_residual(u, 1, 2, 1, pi_square());
    const double target = std::pow(kPi, 6) / 9.0;
    CHECK(r.lhs == doctest::Approx(target).epsilon(1e-12));
    CHECK(r.rhs == doctest::Approx(target).epsilon(1e-12));
    CHECK(std::abs(r.residual) < 1e-9 * (std::abs(r.lhs) + std::abs(r.rhs)));
}

TEST_CASE("syntactically mirrored triples give residual exactly zero") {
    const Poly2 u = bubble(unit_square(), Poly2::affine(1.0, 1.0, 0.0));
    // When j = k, k = m, or j = k = m, both integrands are the same product
    // up to operand order and derivative order; the canonical product and the
    // sorted d2 make them bit-identical polynomials, so both quadrature sums
    // run over identical summands.
    for (const auto [j, k, m] : {std::array<int, 3>{1, 1, 1}, {2, 2, 2}, {1, 1, 2},
                                 {2, 2, 1}, {1, 2, 2}, {2, 1, 1}}) {
        const IdentityResult r = identity_residual(u, j, k, m, unit_square());
        CHECK(r.residual == 0.0);
    }
}

TEST_CASE("residual is symmetric under swapping the outer indices") {
    // lhs is symmetric in (j, m) by commutativity of the product; rhs because
    // d2 sorts its axes. So (j,k,m) and (m,k,j) give bit-identical results.
    const Poly2 u = bubble(unit_square(), Poly2::monomial(0, 1, 1.0));
    const IdentityResult a = identity_residual(u, 1, 2, 2, unit_square());
    const IdentityResult b = identity_residual(u, 2, 2, 1, unit_square());
    CHECK(a.lhs == b.lhs);
    CHECK(a.rhs == b.rhs);
    CHECK(a.residual == b.residual);
    const IdentityResult c = identity_residual(u, 1, 1, 2, unit_square());
    const IdentityResult d = identity_residual(u, 2, 1, 1, unit_square());
    CHECK(c.residual == d.residual);
}

TEST_CASE("identity holds on convex polygons for nontrivial triples") {
    const PolygonDomain tri = build_polygon({{0, 0}, {1, 0}, {0, 1}}, all_d(3));
    const PolygonDomain sq = unit_square();
    for (const PolygonDomain* dom : {&tri, &sq}) {
        const Poly2 u = bubble(*dom);
        for (int j : {1, 2})
            for (int k : {1, 2})
                for (int m : {1, 2}) {
                    const IdentityResult r = identity_residual(u, j, k, m, *dom);
                    CHECK(std::abs(r.residual) <=
                          1e-9 * (std::abs(r.lhs) + std::abs(r.rhs) + 1e-30));
                }
    }
}

TEST_CASE("disk counterexample: the identity fails off the polytope class") {
    // u = (1 - x^2 - y^2) x vanishes on the unit circle; for (j,k,m) =
    // (1,2,1) the two sides integrate to pi and 3 pi.
    const Poly2 disk_u =
        (Poly2::constant(1.0) - Poly2::monomial(2, 0, 1.0) - Poly2::monomial(0, 2, 1.0)) *
        Poly2::monomial(1, 0, 1.0);
    const IdentityResult r = identity_residual_disk(disk_u, 1, 2, 1);
    CHECK(r.lhs == doctest::Approx(kPi).epsilon(1e-13));
    CHECK(r.rhs == doctest::Approx(3.0 * kPi).epsilon(1e-13));
    CHECK(r.residual == doctest::Approx(-2.0 * kPi).epsilon(1e-13));
}

TEST_CASE("boundary hypothesis is enforced") {
    SUBCASE("non-vanishing polynomial on the square") {
        try {
            identity_residual(Poly2::constant(1.0), 1, 2, 1, unit_square());
            FAIL("expected a throw");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::BoundaryConditionViolated);
        }
    }
    SUBCASE("non-vanishing polynomial on the disk") {
        CHECK_THROWS_AS(identity_residual_disk(Poly2::monomial(1, 0, 1.0), 1, 2, 1), Error);
    }
    SUBCASE("bubble of one domain fails on another") {
        const PolygonDomain tri = build_polygon({{0, 0}, {1, 0}, {0, 1}}, all_d(3));
        CHECK_THROWS_AS(identity_residual(bubble(unit_square()), 1, 2, 1, tri), Error);
    }
    SUBCASE("axis indices are validated") {
        CHECK_THROWS_AS(identity_residual(bubble(unit_square()), 0, 1, 2, unit_square()),
                        std::invalid_argument);
        const Poly2 disk_ok = Poly2::constant(1.0) - Poly2::monomial(2, 0, 1.0) -
                              Poly2::monomial(0, 2, 1.0);
        CHECK_THROWS_AS(identity_residual_disk(disk_ok, 1, 3, 2), std::invalid_argument);
    }
}
