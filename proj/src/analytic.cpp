#include "speclab/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace speclab {

namespace {

// Doubled separation constant 2*c_n: 2n (DD), 2n-2 (NN), 2n-1 (DN/ND).
std::int64_t doubled_constant(const std::array<BoundaryLabel, 2>& labels, int n) {
    const bool d0 = labels[0] == BoundaryLabel::Dirichlet;
    const bool dL = labels[1] == BoundaryLabel::Dirichlet;
    if (d0 && dL) return 2 * std::int64_t(n);
    if (!d0 && !dL) return 2 * std::int64_t(n) - 2;
    return 2 * std::int64_t(n) - 1;
}

struct Entry {
    std::int64_t quarters; // meaningful iff exact
    double value;
    std::array<int, 3> tuple;
};

} // namespace

double axis_factor(const std::array<BoundaryLabel, 2>& labels, double L, int n) {
    if (n < 1) throw std::invalid_argument("axis index must be >= 1");
    const double c2 = 0.5 * static_cast<double>(doubled_constant(labels, n));
    const double w = std::numbers::pi / L;
    return w * w * c2 * c2;
}

std::int64_t axis_quarter_factor(const std::array<BoundaryLabel, 2>& labels, int n) {
    if (n < 1) throw std::invalid_argument("axis index must be >= 1");
    const std::int64_t c = doubled_constant(labels, n);
    return c * c;
}

SeparableSpectrum separable_spectrum(const BoxDomain& box, int K) {
    if (K < 1) throw std::invalid_argument("K must be >= 1");
    const int d = box.dim();
    const bool exact = box.is_pi_box();

    auto axis_value = [&](int a, int n) {
        return axis_factor(box.face_labels(a), box.length(a), n);
    };
    auto axis_quarters = [&](int a, int n) { return axis_quarter_factor(box.face_labels(a), n); };

    std::array<int, 3> caps{};
    for (int a = 0; a < d; ++a) caps[a] = K;

    std::vector<Entry> entries;
    for (;;) {
        entries.clear();
        std::array<int, 3> t{0, 0, 0};
        for (int n = 1; n <= caps[0]; ++n)
            for (int m = 1; m <= caps[1]; ++m) {
                t[0] = n;
                t[1] = m;
                if (d == 2) {
                    Entry e{0, axis_value(0, n) + axis_value(1, m), t};
                    if (exact) e.quarters = axis_quarters(0, n) + axis_quarters(1, m);
                    entries.push_back(e);
                } else {
                    for (int l = 1; l <= caps[2]; ++l) {
                        t[2] = l;
                        Entry e{0, axis_value(0, n) + axis_value(1, m) + axis_value(2, l), t};
                        if (exact)
                            e.quarters = axis_quarters(0, n) + axis_quarters(1, m) +
                                         axis_quarters(2, l);
                        entries.push_back(e);
                    }
                    t[2] = 0;
                }
            }

        std::sort(entries.begin(), entries.end(), [&](const Entry& a, const Entry& b) {
            if (exact) {
                if (a.quarters != b.quarters) return a.quarters < b.quarters;
            } else if (a.value != b.value) {
                return a.value < b.value;
            }
            return a.tuple < b.tuple;
        });

        // Cutoff certificate: every tuple outside the caps has one coordinate
        // past its cap, hence total >= that single-axis value (other axes
        // contribute >= 0). Grow any axis whose first excluded value does not
        // strictly exceed the K-th smallest sum.
        const Entry& kth = entries[static_cast<size_t>(K) - 1];
        bool grew = false;
        for (int a = 0; a < d; ++a) {
            const bool inside = exact ? axis_quarters(a, caps[a] + 1) <= kth.quarters
                                      : axis_value(a, caps[a] + 1) <= kth.value;
            if (inside) {
                caps[a] += std::max(1, caps[a] / 2);
                grew = true;
            }
        }
        if (!grew) break;
    }

    SeparableSpectrum spectrum;
    spectrum.exact = exact;
    spectrum.dim = d;
    for (int i = 0; i < K; ++i) {
        const Entry& e = entries[static_cast<size_t>(i)];
        if (exact) {
            spectrum.quarters.push_back(e.quarters);
            spectrum.values.push_back(static_cast<double>(e.quarters) / 4.0);
        } else {
            spectrum.values.push_back(e.value);
        }
        spectrum.tuples.push_back(e.tuple);
    }
    return spectrum;
}

} // namespace speclab
