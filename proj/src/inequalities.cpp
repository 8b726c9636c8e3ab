#include "speclab/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "speclab/eigensolve.hpp"
#include "speclab/format.hpp"
#include "speclab/mesh.hpp"

namespace speclab {

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Holds: return "HOLDS";
        case Verdict::EqualityWithinTol: return "EQUALITY_WITHIN_TOL";
        case Verdict::Violated: return "VIOLATED";
        case Verdict::Inconclusive: return "INCONCLUSIVE";
    }
    return "?";
}

Verdict classify(double margin, double uncertainty) {
    if (std::isnan(margin)) return Verdict::Inconclusive;
    if (margin < -uncertainty) return Verdict::Violated;
    if (margin > uncertainty) return Verdict::Holds;
    return Verdict::EqualityWithinTol;
}

RichardsonResult richardson(const std::vector<double>& v, double order) {
    const int n = static_cast<int>(v.size());
    if (n < 2) throw std::invalid_argument("richardson needs at least 2 levels");

    const double vf = v[n - 1];
    const double vc = v[n - 2];
    const double f = std::pow(2.0, order);
    RichardsonResult r;
    r.extrapolated = (f * vf - vc) / (f - 1.0);
    r.uncertainty = std::max(std::abs(r.extrapolated - vf), 1e-6 * std::abs(r.extrapolated));

    double scale = 0.0;
    for (double x : v) scale = std::max(scale, std::abs(x));
    const double tiny = 1e-12 * std::max(scale, 1.0);

    for (int i = 0; i + 1 < n; ++i)
        if (v[i + 1] > v[i] + tiny) r.monotone = false;
    if (!r.monotone) r.uncertainty = std::max(r.uncertainty, std::abs(vf - vc));

    if (n >= 3) {
        const double d1 = v[n - 3] - v[n - 2];
        const double d2 = v[n - 2] - v[n - 1];
        if (std::abs(d2) > tiny && d1 / d2 > 0.0) {
            const double q = d1 / d2;
            r.observed_order = std::log2(q);
            if (q > 1.0) {
                const double ext_obs = (q * vf - vc) / (q - 1.0);
                r.uncertainty = std::max(r.uncertainty, std::abs(ext_obs - r.extrapolated));
            } else {
                // Differences not shrinking: the asymptotic regime is not
                // reached; treat like a non-monotone tail.
                r.uncertainty = std::max(r.uncertainty, std::abs(vf - vc));
            }
        }
    }
    return r;
}

int default_base_level(const PolygonDomain& domain, int K) {
    const int need = std::max(4 * K, K + 2);
    Mesh mesh = triangulate(domain);
    for (int level = 0; level <= 12; ++level) {
        std::vector<bool> on_boundary(mesh.nodes.size(), false);
        for (const auto& e : mesh.boundary_edges) on_boundary[e.a] = on_boundary[e.b] = true;
        int free = 0;
        for (bool b : on_boundary)
            if (!b) ++free;
        if (free >= need) return level;
        mesh = refine(mesh);
    }
    throw std::invalid_argument("K too large for a practical mesh hierarchy");
}

Spectrum fem_spectrum(const PolygonDomain& domain, ProblemKind kind, int K, int levels,
                      int base_level) {
    if (K < 1) throw std::invalid_argument("K must be >= 1");
    if (levels < 2) throw std::invalid_argument("levels must be >= 2");
    if (kind == ProblemKind::Mixed) validate_mixed_partition(domain);
    if (base_level < 0) base_level = default_base_level(domain, K);

    Mesh mesh = triangulate(domain);
    for (int l = 0; l < base_level; ++l) mesh = refine(mesh);

    std::vector<std::vector<double>> per_level; // [level][k]
    for (int l = 0; l < levels; ++l) {
        if (l > 0) mesh = refine(mesh);
        const AssembledSystem sys = assemble(mesh, kind);
        if (sys.dofs.free_count < K)
            throw std::invalid_argument("mesh too coarse for requested eigenvalue count");
        const EigenResult eig = smallest_eigs(sys.K, sys.M, K);
        per_level.push_back(eig.eigenvalues);
    }

    Spectrum s;
    s.descriptor.geometry_id = domain.geometry_id();
    s.descriptor.kind = kind;
    s.descriptor.dim = 2;
    s.descriptor.convex = is_convex(domain);
    s.descriptor.dirichlet_length =
        kind == ProblemKind::Neumann
            ? 0.0
            : (kind == ProblemKind::Dirichlet ? domain.boundary_length()
                                              : domain.part_length(BoundaryLabel::Dirichlet));
    for (const auto l : domain.labels()) s.descriptor.labels += label_char(l);
    s.provenance = Provenance::FemExtrapolated;
    s.base_level = base_level;
    s.levels = levels;

    for (int k = 0; k < K; ++k) {
        std::vector<double> by_level;
        for (const auto& lv : per_level) by_level.push_back(lv[k]);
        const RichardsonResult r = richardson(by_level);
        s.values.push_back(r.extrapolated);
        s.uncertainties.push_back(r.uncertainty);
    }
    return s;
}

Spectrum analytic_spectrum(const BoxDomain& box, int K) {
    const SeparableSpectrum sep = separable_spectrum(box, K);
    Spectrum s;
    s.descriptor.geometry_id = box.geometry_id();
    const bool has_d = box.has_label(BoundaryLabel::Dirichlet);
    const bool has_n = box.has_label(BoundaryLabel::Neumann);
    s.descriptor.kind = has_d && has_n
                            ? ProblemKind::Mixed
                            : (has_d ? ProblemKind::Dirichlet : ProblemKind::Neumann);
    s.descriptor.dim = box.dim();
    s.descriptor.convex = true;
    for (int a = 0; a < box.dim(); ++a) {
        if (a) s.descriptor.labels += '|';
        s.descriptor.labels += char('x' + a);
        s.descriptor.labels += ':';
        s.descriptor.labels += label_char(box.face_labels(a)[0]);
        s.descriptor.labels += label_char(box.face_labels(a)[1]);
    }
    s.values = sep.values;
    s.uncertainties.assign(sep.values.size(), 0.0);
    s.exact = sep.exact;
    s.quarters = sep.quarters;
    s.tuples = sep.tuples;
    s.provenance = Provenance::Analytic;
    return s;
}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void require_same_geometry(const Spectrum& a, const Spectrum& b) {
    if (a.descriptor.geometry_id != b.descriptor.geometry_id)
        throw Error(ErrorCode::DomainMismatch, "spectra computed on different regions: " +
                                                   a.descriptor.geometry_id + " vs " +
                                                   b.descriptor.geometry_id);
}

/// Row comparing lhs.values[lk-1] <= rhs.values[rk-1] (1-based indices).
InequalityRow make_row(const std::string& claim, int k, const Spectrum& lhs, int lk,
                       const Spectrum& rhs, int rk) {
    InequalityRow row;
    row.claim = claim;
    row.k = k;
    if (lk < 1 || lk > lhs.size() || rk < 1 || rk > rhs.size()) {
        row.lhs = row.rhs = row.margin = kNaN;
        row.verdict = Verdict::Inconclusive;
        return row;
    }
    row.lhs = lhs.values[lk - 1];
    row.rhs = rhs.values[rk - 1];
    row.uncertainty = lhs.uncertainties[lk - 1] + rhs.uncertainties[rk - 1];
    if (lhs.exact && rhs.exact) {
        row.exact = true;
        row.lhs_quarters = lhs.quarters[lk - 1];
        row.rhs_quarters = rhs.quarters[rk - 1];
        const std::int64_t mq = row.rhs_quarters - row.lhs_quarters;
        row.margin = static_cast<double>(mq) / 4.0;
        row.verdict = mq > 0 ? Verdict::Holds
                             : (mq < 0 ? Verdict::Violated : Verdict::EqualityWithinTol);
    } else {
        row.margin = row.rhs - row.lhs;
        row.verdict = classify(row.margin, row.uncertainty);
    }
    return row;
}

} // namespace

Verdict InequalityReport::overall() const {
    bool any_inconclusive = false;
    bool any_equality = false;
    for (const auto& r : rows) {
        if (r.verdict == Verdict::Violated) return Verdict::Violated;
        if (r.verdict == Verdict::Inconclusive) any_inconclusive = true;
        if (r.verdict == Verdict::EqualityWithinTol) any_equality = true;
    }
    if (any_inconclusive) return Verdict::Inconclusive;
    if (any_equality) return Verdict::EqualityWithinTol;
    return Verdict::Holds;
}

bool InequalityReport::passes() const {
    return !(hypothesis_satisfied && overall() == Verdict::Violated);
}

InequalityReport check_chain(const Spectrum& mu, const Spectrum& mixed, const Spectrum& dirichlet,
                             int K) {
    require_same_geometry(mu, mixed);
    require_same_geometry(mixed, dirichlet);
    InequalityReport rep;
    rep.claim = "chain";
    for (int k = 1; k <= K; ++k) {
        rep.rows.push_back(make_row("chain:mu_le_mixed", k, mu, k, mixed, k));
        rep.rows.push_back(make_row("chain:mixed_le_dirichlet", k, mixed, k, dirichlet, k));
    }
    return rep;
}

InequalityReport check_neumann_mixed(const Spectrum& mu, const Spectrum& mixed, int dim_S_N,
                                     int K) {
    require_same_geometry(mu, mixed);
    InequalityReport rep;
    rep.claim = "neumann_mixed";
    rep.hypothesis_satisfied = dim_S_N >= 1;
    rep.probe = !rep.hypothesis_satisfied;
    for (int k = 1; k <= K; ++k)
        rep.rows.push_back(make_row("neumann_mixed", k, mu, k + 1, mixed, k));
    return rep;
}

InequalityReport check_dirichlet_mixed(const Spectrum& mixed, const Spectrum& dirichlet,
                                       int dim_S_D, int K, int shift_override) {
    require_same_geometry(mixed, dirichlet);
    if (!mixed.descriptor.convex || !dirichlet.descriptor.convex)
        throw Error(ErrorCode::NotConvex, "dirichlet_mixed check requires a convex domain");
    const int shift = shift_override >= 0 ? shift_override : dim_S_D;
    InequalityReport rep;
    rep.claim = shift_override >= 0 && shift_override != dim_S_D
                    ? "dirichlet_mixed_probe_shift" + std::to_string(shift)
                    : "dirichlet_mixed";
    rep.hypothesis_satisfied = shift <= dim_S_D;
    rep.probe = !rep.hypothesis_satisfied;
    for (int k = 1; k <= K; ++k)
        rep.rows.push_back(make_row(rep.claim, k, mixed, k + shift, dirichlet, k));
    return rep;
}

InequalityReport check_levine_weinberger(const Spectrum& mu, const Spectrum& dirichlet, int d,
                                         int K, int shift_override) {
    require_same_geometry(mu, dirichlet);
    if (!mu.descriptor.convex || !dirichlet.descriptor.convex)
        throw Error(ErrorCode::NotConvex, "Levine-Weinberger check requires a convex domain");
    const int shift = shift_override >= 0 ? shift_override : d;
    InequalityReport rep;
    rep.claim = shift_override >= 0 && shift_override != d
                    ? "levine_weinberger_probe_shift" + std::to_string(shift)
                    : "levine_weinberger";
    rep.hypothesis_satisfied = shift <= d;
    rep.probe = !rep.hypothesis_satisfied;
    for (int k = 1; k <= K; ++k)
        rep.rows.push_back(make_row(rep.claim, k, mu, k + shift, dirichlet, k));
    return rep;
}

InequalityReport check_monotonicity(const Spectrum& mixed_small, const Spectrum& mixed_large,
                                    int K) {
    require_same_geometry(mixed_small, mixed_large);
    InequalityReport rep;
    rep.claim = "monotonicity";
    rep.strict = true;
    rep.hypothesis_satisfied =
        mixed_small.descriptor.dirichlet_length < mixed_large.descriptor.dirichlet_length;
    for (int k = 1; k <= K; ++k)
        rep.rows.push_back(make_row("monotonicity", k, mixed_small, k, mixed_large, k));
    return rep;
}

void write_report_csv(std::ostream& os, const InequalityReport& report) {
    os << "claim,k,lhs,rhs,margin,uncertainty,verdict\n";
    for (const auto& r : report.rows) {
        os << r.claim << "," << r.k << ",";
        if (r.exact)
            os << fmt_quarters(r.lhs_quarters) << "," << fmt_quarters(r.rhs_quarters) << ","
               << fmt_quarters(r.rhs_quarters - r.lhs_quarters) << ",0,";
        else
            os << fmt_g17(r.lhs) << "," << fmt_g17(r.rhs) << "," << fmt_g17(r.margin) << ","
               << fmt_g17(r.uncertainty) << ",";
        os << to_string(r.verdict) << "\n";
    }
}

} // namespace speclab
