#include <doctest.h>

#include <algorithm>
#include <array>
#include <cstdint>
#include <numbers>
#include <vector>

#include "speclab/analytic.hpp"

using namespace speclab;

namespace {

const double kPi = std::numbers::pi;
constexpr BoundaryLabel D = BoundaryLabel::Dirichlet;
constexpr BoundaryLabel N = BoundaryLabel::Neumann;

BoxDomain box2(std::array<BoundaryLabel, 2> x, std::array<BoundaryLabel, 2> y,
               double lx = std::numbers::pi, double ly = std::numbers::pi) {
    return BoxDomain::make(2, {lx, ly}, {{x, y, {N, N}}});
}

} // namespace

TEST_CASE("axis factors for the four label combinations") {
    // c_n = n (DD), n-1 (NN), n-1/2 (DN or ND); factor (pi/L)^2 c_n^2
    CHECK(axis_factor({D, D}, kPi, 1) == doctest::Approx(1.0));
    CHECK(axis_factor({D, D}, kPi, 3) == doctest::Approx(9.0));
    CHECK(axis_factor({N, N}, kPi, 1) == 0.0);
    CHECK(axis_factor({N, N}, kPi, 4) == doctest::Approx(9.0));
    CHECK(axis_factor({D, N}, kPi, 1) == doctest::Approx(0.25));
    CHECK(axis_factor({N, D}, kPi, 2) == doctest::Approx(2.25));
    // length scaling: factor ~ (pi/L)^2
    CHECK(axis_factor({D, D}, 2.0, 1) == doctest::Approx(kPi * kPi / 4.0));

    // exact quarter-unit variants (2 c_n)^2
    CHECK(axis_quarter_factor({D, D}, 2) == 16);
    CHECK(axis_quarter_factor({N, N}, 1) == 0);
    CHECK(axis_quarter_factor({D, N}, 1) == 1);
    CHECK(axis_quarter_factor({N, D}, 3) == 25);
}

TEST_CASE("pi-square spectra are exact quarter integers") {
    SUBCASE("one Dirichlet side (y bottom)") {
        const SeparableSpectrum s = separable_spectrum(box2({N, N}, {D, N}), 4);
        REQUIRE(s.exact);
        REQUIRE(s.quarters.size() == 4);
        CHECK(s.quarters[0] == 1);  // 1/4
        CHECK(s.quarters[1] == 5);  // 5/4
        CHECK(s.quarters[2] == 9);  // 9/4
        CHECK(s.quarters[3] == 13); // 13/4
        CHECK(s.values[0] == doctest::Approx(0.25));
    }
    SUBCASE("pure Neumann starts at zero") {
        const SeparableSpectrum s = separable_spectrum(box2({N, N}, {N, N}), 4);
        REQUIRE(s.exact);
        CHECK(s.quarters[0] == 0);
        CHECK(s.quarters[1] == 4); // mu_2 = 1
        CHECK(s.quarters[2] == 4); // double eigenvalue
        CHECK(s.quarters[3] == 8);
    }
    SUBCASE("pure Dirichlet") {
        const SeparableSpectrum s = separable_spectrum(box2({D, D}, {D, D}), 4);
        REQUIRE(s.exact);
        CHECK(s.quarters[0] == 8);  // 2
        CHECK(s.quarters[1] == 20); // 5
        CHECK(s.quarters[2] == 20);
        CHECK(s.quarters[3] == 32); // 8
    }
    SUBCASE("two parallel Dirichlet sides: equality value 1 appears") {
        const SeparableSpectrum s = separable_spectrum(box2({N, N}, {D, D}), 2);
        CHECK(s.quarters[0] == 4); // lambda_1^Gamma = 1
        CHECK(s.quarters[1] == 8);
    }
}

TEST_CASE("tuples record per-axis indices and break ties deterministically") {
    const SeparableSpectrum s = separable_spectrum(box2({N, N}, {N, N}), 3);
    CHECK(s.tuples[0] == std::array<int, 3>{1, 1, 0});
    // tie at value 1: (2,1) before (1,2) by tuple order... the tie-break is
    // lexicographic on the index tuple
    CHECK(s.quarters[1] == s.quarters[2]);
    CHECK(s.tuples[1] < s.tuples[2]);
}

TEST_CASE("axis relabeling permutes the spectrum consistently") {
    const SeparableSpectrum a = separable_spectrum(box2({D, N}, {N, N}), 8);
    const SeparableSpectrum b = separable_spectrum(box2({N, N}, {D, N}), 8);
    REQUIRE(a.exact);
    REQUIRE(b.exact);
    CHECK(a.quarters == b.quarters); // same multiset, same sorted order
}

TEST_CASE("non-pi boxes use the float path with a growth certificate") {
    const SeparableSpectrum s = separable_spectrum(box2({D, D}, {D, D}, 1.0, 1.5), 10);
    CHECK_FALSE(s.exact);
    CHECK(s.quarters.empty());
    REQUIRE(s.values.size() == 10);
    // oracle: lambda_{n,m} = pi^2 (n^2 + m^2 / 2.25), sorted
    std::vector<double> oracle;
    for (int n = 1; n <= 12; ++n)
        for (int m = 1; m <= 12; ++m)
            oracle.push_back(kPi * kPi * (n * n + m * m / 2.25));
    std::sort(oracle.begin(), oracle.end());
    for (int i = 0; i < 10; ++i)
        CHECK(s.values[i] == doctest::Approx(oracle[i]).epsilon(1e-13));
    // ascending with multiplicity
    for (int i = 1; i < 10; ++i) CHECK(s.values[i] >= s.values[i - 1]);
}

TEST_CASE("3d cube spectra") {
    const BoxDomain cube = BoxDomain::make(
        3, {kPi, kPi, kPi}, {{{D, D}, {D, D}, {N, N}}});
    const SeparableSpectrum mixed = separable_spectrum(cube, 8);
    REQUIRE(mixed.exact);
    // n^2 + m^2 + (l-1)^2 over n,m >= 1 (Dirichlet axes), l >= 1 (Neumann)
    const std::vector<std::int64_t> expect_mixed = {8, 12, 20, 20, 24, 24, 24, 32};
    CHECK(mixed.quarters == expect_mixed);

    const SeparableSpectrum dir = separable_spectrum(cube.with_all_faces(D), 4);
    const std::vector<std::int64_t> expect_dir = {12, 24, 24, 24};
    CHECK(dir.quarters == expect_dir);

    const SeparableSpectrum neu = separable_spectrum(cube.with_all_faces(N), 5);
    const std::vector<std::int64_t> expect_neu = {0, 4, 4, 4, 8};
    CHECK(neu.quarters == expect_neu);
    CHECK(neu.tuples[0] == std::array<int, 3>{1, 1, 1});
}

TEST_CASE("anisotropic boxes force cutoff-certificate growth") {
    // On [0,1] x [0,10] the long axis contributes many small factors, so the
    // initial per-axis cap K is insufficient as a certificate and must grow.
    const SeparableSpectrum s = separable_spectrum(box2({D, D}, {D, D}, 1.0, 10.0), 12);
    REQUIRE(s.values.size() == 12);
    std::vector<double> oracle;
    for (int n = 1; n <= 60; ++n)
        for (int m = 1; m <= 60; ++m)
            oracle.push_back(kPi * kPi * (n * n + m * m / 100.0));
    std::sort(oracle.begin(), oracle.end());
    for (int i = 0; i < 12; ++i)
        CHECK(s.values[i] == doctest::Approx(oracle[i]).epsilon(1e-13));
}

TEST_CASE("large K stays sorted with multiplicity") {
    const SeparableSpectrum s = separable_spectrum(box2({D, D}, {D, D}), 200);
    REQUIRE(s.values.size() == 200);
    for (int i = 1; i < 200; ++i) CHECK(s.quarters[i] >= s.quarters[i - 1]);
    // spot value: the 200th smallest n^2+m^2 sum (with multiplicity),
    // cross-checked by direct enumeration over a generous index range
    std::vector<std::int64_t> sums;
    for (int n = 1; n <= 40; ++n)
        for (int m = 1; m <= 40; ++m) sums.push_back(4LL * (n * n + m * m));
    std::sort(sums.begin(), sums.end());
    CHECK(s.quarters[199] == sums[199]);
}
