#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "speclab/analytic.hpp"
#include "speclab/assembly.hpp"
#include "speclab/geometry.hpp"

namespace speclab {

enum class Verdict { Holds, EqualityWithinTol, Violated, Inconclusive };

const char* to_string(Verdict v);

/// margin = rhs - lhs against combined uncertainty u:
///   VIOLATED   iff margin < -u
///   HOLDS      iff margin >  u
///   EQUALITY_WITHIN_TOL otherwise (|margin| <= u with u > 0, or margin == 0
///   exactly when u == 0).
Verdict classify(double margin, double uncertainty);

enum class Provenance { Analytic, FemExtrapolated };

struct ProblemDescriptor {
    std::string geometry_id;
    ProblemKind kind = ProblemKind::Mixed;
    int dim = 2;
    bool convex = false;
    double dirichlet_length = 0.0;
    std::string labels;
};

/// Ordered eigenvalue list with per-value uncertainty. Analytic spectra carry
/// zero uncertainty and, on pi-boxes, exact quarter-integer values.
struct Spectrum {
    ProblemDescriptor descriptor;
    std::vector<double> values;
    std::vector<double> uncertainties;
    bool exact = false;
    std::vector<std::int64_t> quarters; // iff exact
    std::vector<std::array<int, 3>> tuples; // iff analytic (multiplicity bookkeeping)
    Provenance provenance = Provenance::Analytic;
    int base_level = 0;
    int levels = 0;

    int size() const { return static_cast<int>(values.size()); }
};

struct RichardsonResult {
    double extrapolated = 0.0;
    double uncertainty = 0.0;
    std::optional<double> observed_order;
    bool monotone = true;
};

/// Eliminates the leading O(h^p) error from the two finest levels
/// (mesh-size ratio exactly 2); uncertainty floor 1e-6 relative. A
/// non-monotone tail inflates the uncertainty to |v_fine - v_coarse|; with
/// >= 3 levels the observed order log2((v0-v1)/(v1-v2)) of the finest triple
/// is reported, and the spread between assumed-order and observed-order
/// extrapolation is folded into the uncertainty (corner singularities lower
/// the true rate; honest verdicts beat sharp ones).
RichardsonResult richardson(const std::vector<double>& values_by_level, double order = 2.0);

/// Smallest refinement level whose pure-Dirichlet free dof count is
/// >= max(4K, K+2) (so K stays below a quarter of the coarsest system).
int default_base_level(const PolygonDomain& domain, int K);

/// Assembles and solves at `levels` successive uniform refinements starting
/// at `base_level` (default: default_base_level), then Richardson-extrapolates
/// each eigenvalue. Conforming P1 on nested meshes, so per-level values
/// decrease monotonically toward the limit.
Spectrum fem_spectrum(const PolygonDomain& domain, ProblemKind kind, int K, int levels,
                      int base_level = -1);

/// Separation-of-variables spectrum as a Spectrum (uncertainty 0).
Spectrum analytic_spectrum(const BoxDomain& box, int K);

struct InequalityRow {
    std::string claim;
    int k = 0;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;
    double uncertainty = 0.0;
    Verdict verdict = Verdict::Inconclusive;
    bool exact = false; // margin decided in integer arithmetic
    std::int64_t lhs_quarters = 0;
    std::int64_t rhs_quarters = 0;
};

struct InequalityReport {
    std::string claim;
    bool hypothesis_satisfied = true;
    bool probe = false; // shift pushed past the proven one / unsatisfied-hypothesis run
    bool strict = false; // claim requires strict inequality (HOLDS, not equality)
    std::vector<InequalityRow> rows;

    Verdict overall() const;
    /// False only when a check whose hypotheses are satisfied is VIOLATED.
    bool passes() const;
};

/// mu_k <= lambda_k^Gamma <= lambda_k (two rows per k).
InequalityReport check_chain(const Spectrum& mu, const Spectrum& mixed,
                             const Spectrum& dirichlet, int K);

/// mu_{k+1} <= lambda_k^Gamma; hypothesis dim S(Gamma_N) >= 1. With
/// dim_S_N = 0 the rows are still reported as an expected-violation probe.
InequalityReport check_neumann_mixed(const Spectrum& mu, const Spectrum& mixed, int dim_S_N,
                                     int K);

/// lambda_{k+shift}^Gamma <= lambda_k with shift = dim S(Gamma_D), on convex
/// domains. shift_override > dim_S_D marks the report as a probe.
InequalityReport check_dirichlet_mixed(const Spectrum& mixed, const Spectrum& dirichlet,
                                       int dim_S_D, int K, int shift_override = -1);

/// mu_{k+d} <= lambda_k on convex domains (Levine-Weinberger);
/// shift_override > d marks a probe.
InequalityReport check_levine_weinberger(const Spectrum& mu, const Spectrum& dirichlet, int d,
                                         int K, int shift_override = -1);

/// Strict lambda_k^Gamma < lambda_k^Gamma' for Gamma subset Gamma'.
InequalityReport check_monotonicity(const Spectrum& mixed_small, const Spectrum& mixed_large,
                                    int K);

/// CSV: claim,k,lhs,rhs,margin,uncertainty,verdict. Exact values print as
/// reduced rationals, floats with 17 significant digits.
void write_report_csv(std::ostream& os, const InequalityReport& report);

} // namespace speclab
