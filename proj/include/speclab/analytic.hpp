#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "speclab/geometry.hpp"

namespace speclab {

/// First K eigenvalues of a box with per-face D/N labels, by separation of
/// variables. When every side length is exactly pi the spectrum is carried in
/// exact quarter-integer arithmetic (quarters[i] = 4 * value) and sorting
/// never compares floating-point numbers.
struct SeparableSpectrum {
    bool exact = false;
    std::vector<std::int64_t> quarters; // filled iff exact
    std::vector<double> values; // always filled
    std::vector<std::array<int, 3>> tuples; // per-axis indices n >= 1; unused axes 0
    int dim = 2;
};

/// One-dimensional factor (pi/L)^2 * c_n^2 with c_n = n for DD, n-1 for NN,
/// n-1/2 for DN or ND.
double axis_factor(const std::array<BoundaryLabel, 2>& labels, double L, int n);

/// Exact variant for L = pi: returns (2 c_n)^2, i.e. the factor in quarter
/// units.
std::int64_t axis_quarter_factor(const std::array<BoundaryLabel, 2>& labels, int n);

/// Enumerates index tuples with per-axis caps grown until the smallest
/// excluded single-axis value exceeds the K-th smallest sum (cutoff
/// certificate), then returns the first K values sorted ascending with
/// multiplicity. Ties are ordered by index tuple, so output is deterministic.
SeparableSpectrum separable_spectrum(const BoxDomain& box, int K);

} // namespace speclab
