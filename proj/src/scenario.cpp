#include "speclab/scenario.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include <json.hpp>

#include "speclab/errors.hpp"

namespace speclab {

using nlohmann::json;

namespace {

[[noreturn]] void schema_fail(const std::string& ptr, const std::string& msg) {
    throw Error(ErrorCode::SchemaError, ptr + ": " + msg);
}

const json& field(const json& j, const char* key, const std::string& ptr) {
    if (!j.is_object()) schema_fail(ptr, "expected an object");
    const auto it = j.find(key);
    if (it == j.end()) schema_fail(ptr + "/" + key, "missing required field");
    return *it;
}

void reject_unknown_keys(const json& j, const std::set<std::string>& allowed,
                         const std::string& ptr) {
    for (const auto& [key, value] : j.items())
        if (!allowed.contains(key)) schema_fail(ptr + "/" + key, "unknown field");
}

double number_or_pi(const json& j, const std::string& ptr) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string() && j.get<std::string>() == "pi") return std::numbers::pi;
    schema_fail(ptr, "expected a number or \"pi\"");
}

BoundaryLabel parse_label(const json& j, const std::string& ptr) {
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s == "D") return BoundaryLabel::Dirichlet;
        if (s == "N") return BoundaryLabel::Neumann;
    }
    schema_fail(ptr, "expected \"D\" or \"N\"");
}

PolygonDomain parse_polygon(const json& j, const std::string& ptr) {
    reject_unknown_keys(j, {"type", "vertices", "labels"}, ptr);
    const json& jv = field(j, "vertices", ptr);
    if (!jv.is_array() || jv.size() < 3) schema_fail(ptr + "/vertices", "expected >= 3 points");
    std::vector<Eigen::Vector2d> points;
    for (size_t i = 0; i < jv.size(); ++i) {
        const std::string vptr = ptr + "/vertices/" + std::to_string(i);
        if (!jv[i].is_array() || jv[i].size() != 2) schema_fail(vptr, "expected [x, y]");
        points.emplace_back(number_or_pi(jv[i][0], vptr + "/0"),
                            number_or_pi(jv[i][1], vptr + "/1"));
    }
    const json& jl = field(j, "labels", ptr);
    if (!jl.is_array()) schema_fail(ptr + "/labels", "expected an array");
    std::vector<BoundaryLabel> labels;
    for (size_t i = 0; i < jl.size(); ++i)
        labels.push_back(parse_label(jl[i], ptr + "/labels/" + std::to_string(i)));
    if (labels.size() != points.size())
        schema_fail(ptr + "/labels", "expected one label per vertex (got " +
                                         std::to_string(labels.size()) + " for " +
                                         std::to_string(points.size()) + " vertices)");
    return build_polygon(points, labels);
}

BoxDomain parse_box(const json& j, const std::string& ptr) {
    reject_unknown_keys(j, {"type", "lengths", "faces"}, ptr);
    const json& jl = field(j, "lengths", ptr);
    if (!jl.is_array() || (jl.size() != 2 && jl.size() != 3))
        schema_fail(ptr + "/lengths", "expected 2 or 3 side lengths");
    std::vector<double> lengths;
    for (size_t i = 0; i < jl.size(); ++i)
        lengths.push_back(number_or_pi(jl[i], ptr + "/lengths/" + std::to_string(i)));
    const int dim = static_cast<int>(lengths.size());

    const json& jf = field(j, "faces", ptr);
    if (!jf.is_object()) schema_fail(ptr + "/faces", "expected an object");
    std::set<std::string> axes;
    for (int a = 0; a < dim; ++a) axes.insert(std::string(1, char('x' + a)));
    reject_unknown_keys(jf, axes, ptr + "/faces");
    std::array<std::array<BoundaryLabel, 2>, 3> faces{};
    for (int a = 0; a < dim; ++a) {
        const std::string axis(1, char('x' + a));
        const std::string fptr = ptr + "/faces/" + axis;
        const json& pair = field(jf, axis.c_str(), ptr + "/faces");
        if (!pair.is_array() || pair.size() != 2)
            schema_fail(fptr, "expected a [low, high] label pair");
        faces[a][0] = parse_label(pair[0], fptr + "/0");
        faces[a][1] = parse_label(pair[1], fptr + "/1");
    }
    return BoxDomain::make(dim, lengths, faces);
}

const std::set<std::string> kCheckNames = {"chain",       "neumann_mixed", "dirichlet_mixed",
                                           "levine_weinberger", "monotonicity",  "identity"};

CheckSpec parse_check(const json& j, const std::string& ptr) {
    reject_unknown_keys(j, {"check", "shift", "shrink", "extras"}, ptr);
    CheckSpec spec;
    const json& jn = field(j, "check", ptr);
    if (!jn.is_string()) schema_fail(ptr + "/check", "expected a string");
    spec.check = jn.get<std::string>();
    if (!kCheckNames.contains(spec.check)) schema_fail(ptr + "/check", "unknown check name");

    if (j.contains("shift")) {
        if (spec.check != "dirichlet_mixed" && spec.check != "levine_weinberger")
            schema_fail(ptr + "/shift", "only valid for dirichlet_mixed / levine_weinberger");
        if (!j["shift"].is_number_integer() || j["shift"].get<int>() < 0)
            schema_fail(ptr + "/shift", "expected an integer >= 0");
        spec.shift = j["shift"].get<int>();
    }
    if (j.contains("shrink")) {
        if (spec.check != "monotonicity")
            schema_fail(ptr + "/shrink", "only valid for monotonicity");
        if (!j["shrink"].is_number()) schema_fail(ptr + "/shrink", "expected a number");
        spec.shrink = j["shrink"].get<double>();
        if (!(spec.shrink > 0.0 && spec.shrink < 1.0))
            schema_fail(ptr + "/shrink", "expected a value strictly between 0 and 1");
    }
    if (j.contains("extras")) {
        if (spec.check != "identity") schema_fail(ptr + "/extras", "only valid for identity");
        if (!j["extras"].is_array()) schema_fail(ptr + "/extras", "expected an array");
        for (size_t i = 0; i < j["extras"].size(); ++i) {
            const json& e = j["extras"][i];
            const std::string eptr = ptr + "/extras/" + std::to_string(i);
            if (!e.is_string()) schema_fail(eptr, "expected a string");
            const std::string id = e.get<std::string>();
            const auto& known = default_extra_ids();
            if (std::find(known.begin(), known.end(), id) == known.end())
                schema_fail(eptr, "unknown extra factor id");
            spec.extras.push_back(id);
        }
    }
    if (spec.check == "identity" && spec.extras.empty()) spec.extras = default_extra_ids();
    return spec;
}

} // namespace

Scenario parse_scenario_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::SchemaError, std::string("/: not valid JSON (") + e.what() + ")");
    }
    if (!j.is_object()) schema_fail("/", "expected an object");
    reject_unknown_keys(j, {"name", "domain", "k_max", "levels", "checks"}, "");

    Scenario sc;
    const json& jn = field(j, "name", "");
    if (!jn.is_string() || jn.get<std::string>().empty())
        schema_fail("/name", "expected a nonempty string");
    sc.name = jn.get<std::string>();

    const json& jd = field(j, "domain", "");
    const json& jt = field(jd, "type", "/domain");
    if (!jt.is_string()) schema_fail("/domain/type", "expected a string");
    const std::string type = jt.get<std::string>();
    if (type == "polygon")
        sc.domain = parse_polygon(jd, "/domain");
    else if (type == "box")
        sc.domain = parse_box(jd, "/domain");
    else
        schema_fail("/domain/type", "expected \"polygon\" or \"box\"");

    if (j.contains("k_max")) {
        if (!j["k_max"].is_number_integer() || j["k_max"].get<int>() < 1)
            schema_fail("/k_max", "expected an integer >= 1");
        sc.k_max = j["k_max"].get<int>();
    }
    if (j.contains("levels")) {
        if (!j["levels"].is_number_integer() || j["levels"].get<int>() < 2)
            schema_fail("/levels", "expected an integer >= 2");
        sc.levels = j["levels"].get<int>();
    }

    const json& jc = field(j, "checks", "");
    if (!jc.is_array() || jc.empty()) schema_fail("/checks", "expected a nonempty array");
    for (size_t i = 0; i < jc.size(); ++i)
        sc.checks.push_back(parse_check(jc[i], "/checks/" + std::to_string(i)));
    return sc;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::SchemaError, "/: cannot read scenario file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario_json(buf.str());
}

void validate_scenario(const Scenario& sc) {
    for (size_t i = 0; i < sc.checks.size(); ++i) {
        const CheckSpec& spec = sc.checks[i];
        const std::string ptr = "/checks/" + std::to_string(i);
        const bool needs_mixed_labels = spec.check == "neumann_mixed" ||
                                        spec.check == "dirichlet_mixed" ||
                                        spec.check == "monotonicity";
        if (needs_mixed_labels) {
            if (sc.is_polygon())
                validate_mixed_partition(sc.polygon());
            else
                validate_mixed_partition(sc.box());
        }
        const bool needs_convex = spec.check == "dirichlet_mixed" ||
                                  spec.check == "levine_weinberger" || spec.check == "identity";
        if (needs_convex && sc.is_polygon() && !is_convex(sc.polygon()))
            throw Error(ErrorCode::NotConvex,
                        spec.check + " requires a convex domain (" + ptr + ")");
        const bool polygon_only = spec.check == "monotonicity" || spec.check == "identity";
        if (polygon_only && !sc.is_polygon())
            schema_fail(ptr + "/check", spec.check + " requires a polygon domain");
    }
}

const std::vector<std::string>& default_extra_ids() {
    static const std::vector<std::string> ids = {"1", "x", "y", "x+y", "xy"};
    return ids;
}

Poly2 extra_by_id(const std::string& id) {
    if (id == "1") return Poly2::constant(1.0);
    if (id == "x") return Poly2::monomial(1, 0, 1.0);
    if (id == "y") return Poly2::monomial(0, 1, 1.0);
    if (id == "x+y") return Poly2::affine(1.0, 1.0, 0.0);
    if (id == "xy") return Poly2::monomial(1, 1, 1.0);
    throw std::invalid_argument("unknown extra factor id: " + id);
}

bool identity_row_holds(const IdentityRow& row) {
    if (row.residual == 0.0) return true;
    return std::abs(row.residual) < 1e-9 * (std::abs(row.lhs) + std::abs(row.rhs));
}

std::vector<IdentityRow> identity_rows_for(const PolygonDomain& domain,
                                           const std::string& domain_name,
                                           const std::vector<std::string>& extra_ids) {
    std::vector<IdentityRow> rows;
    for (const auto& id : extra_ids) {
        const Poly2 u = bubble(domain, extra_by_id(id));
        for (int j = 1; j <= 2; ++j)
            for (int k = 1; k <= 2; ++k)
                for (int m = 1; m <= 2; ++m) {
                    const IdentityResult r = identity_residual(u, j, k, m, domain);
                    rows.push_back({domain_name, j, k, m, id, r.lhs, r.rhs, r.residual});
                }
    }
    return rows;
}

std::vector<IdentityRow> identity_rows_for_disk(const std::vector<std::string>& extra_ids) {
    const Poly2 disk_bubble = Poly2::constant(1.0) - Poly2::monomial(2, 0, 1.0) -
                              Poly2::monomial(0, 2, 1.0);
    std::vector<IdentityRow> rows;
    for (const auto& id : extra_ids) {
        const Poly2 u = disk_bubble * extra_by_id(id);
        for (int j = 1; j <= 2; ++j)
            for (int k = 1; k <= 2; ++k)
                for (int m = 1; m <= 2; ++m) {
                    const IdentityResult r = identity_residual_disk(u, j, k, m);
                    rows.push_back({"disk", j, k, m, id, r.lhs, r.rhs, r.residual});
                }
    }
    return rows;
}

namespace {

ProblemKind as_labeled_kind(const Scenario& sc) {
    const bool has_d = sc.is_polygon() ? sc.polygon().has_label(BoundaryLabel::Dirichlet)
                                       : sc.box().has_label(BoundaryLabel::Dirichlet);
    const bool has_n = sc.is_polygon() ? sc.polygon().has_label(BoundaryLabel::Neumann)
                                       : sc.box().has_label(BoundaryLabel::Neumann);
    if (has_d && has_n) return ProblemKind::Mixed;
    return has_d ? ProblemKind::Dirichlet : ProblemKind::Neumann;
}

class StageTimer {
public:
    explicit StageTimer(std::vector<std::pair<std::string, double>>& sink) : sink_(sink) {}

    template <typename F>
    auto time(const std::string& stage, F&& f) {
        const auto t0 = std::chrono::steady_clock::now();
        auto result = f();
        const auto t1 = std::chrono::steady_clock::now();
        sink_.emplace_back(stage,
                           std::chrono::duration<double, std::milli>(t1 - t0).count());
        return result;
    }

private:
    std::vector<std::pair<std::string, double>>& sink_;
};

} // namespace

ScenarioResult run_scenario(const Scenario& sc) {
    validate_scenario(sc);

    ScenarioResult res;
    res.name = sc.name;
    StageTimer timer(res.timings_ms);

    const int d = sc.is_polygon() ? 2 : sc.box().dim();

    // Tangent-space dimensions, where the relevant part exists.
    int dim_S_N = -1;
    int dim_S_D = -1;
    const bool has_d = sc.is_polygon() ? sc.polygon().has_label(BoundaryLabel::Dirichlet)
                                       : sc.box().has_label(BoundaryLabel::Dirichlet);
    const bool has_n = sc.is_polygon() ? sc.polygon().has_label(BoundaryLabel::Neumann)
                                       : sc.box().has_label(BoundaryLabel::Neumann);
    if (has_n)
        dim_S_N = sc.is_polygon() ? tangent_space_dim(sc.polygon(), BoundaryLabel::Neumann).dim
                                  : tangent_space_dim(sc.box(), BoundaryLabel::Neumann).dim;
    if (has_d)
        dim_S_D = sc.is_polygon() ? tangent_space_dim(sc.polygon(), BoundaryLabel::Dirichlet).dim
                                  : tangent_space_dim(sc.box(), BoundaryLabel::Dirichlet).dim;

    // Required eigenvalue counts per problem kind.
    int need_mu = 0;
    int need_mixed = 0;
    int need_dir = 0;
    bool need_shrunken = false;
    double shrink = 0.5;
    for (const CheckSpec& spec : sc.checks) {
        if (spec.check == "chain") {
            need_mu = std::max(need_mu, sc.k_max);
            need_mixed = std::max(need_mixed, sc.k_max);
            need_dir = std::max(need_dir, sc.k_max);
        } else if (spec.check == "neumann_mixed") {
            need_mu = std::max(need_mu, sc.k_max + 1);
            need_mixed = std::max(need_mixed, sc.k_max);
        } else if (spec.check == "dirichlet_mixed") {
            const int shift = spec.shift >= 0 ? spec.shift : std::max(dim_S_D, 0);
            need_mixed = std::max(need_mixed, sc.k_max + shift);
            need_dir = std::max(need_dir, sc.k_max);
        } else if (spec.check == "levine_weinberger") {
            const int shift = spec.shift >= 0 ? spec.shift : d;
            need_mu = std::max(need_mu, sc.k_max + shift);
            need_dir = std::max(need_dir, sc.k_max);
        } else if (spec.check == "monotonicity") {
            need_mixed = std::max(need_mixed, sc.k_max);
            need_shrunken = true;
            shrink = spec.shrink;
        }
    }

    // Spectra. All FEM spectra share one mesh hierarchy (same base level).
    Spectrum mu, mixed, dirichlet, shrunken;
    const int max_need = std::max({need_mu, need_mixed, need_dir});
    if (max_need > 0) {
        if (sc.is_polygon()) {
            const PolygonDomain& poly = sc.polygon();
            const int base = default_base_level(poly, max_need);
            if (need_mu > 0)
                mu = timer.time("spectrum:neumann", [&] {
                    return fem_spectrum(poly, ProblemKind::Neumann, need_mu, sc.levels, base);
                });
            if (need_mixed > 0)
                mixed = timer.time("spectrum:mixed", [&] {
                    return fem_spectrum(poly, as_labeled_kind(sc), need_mixed, sc.levels, base);
                });
            if (need_dir > 0)
                dirichlet = timer.time("spectrum:dirichlet", [&] {
                    return fem_spectrum(poly, ProblemKind::Dirichlet, need_dir, sc.levels, base);
                });
            if (need_shrunken) {
                const PolygonDomain smaller =
                    refine_partition(poly, BoundaryLabel::Dirichlet, shrink);
                shrunken = timer.time("spectrum:mixed_shrunken", [&] {
                    return fem_spectrum(smaller, ProblemKind::Mixed, need_mixed, sc.levels,
                                        default_base_level(smaller, need_mixed));
                });
            }
        } else {
            const BoxDomain& box = sc.box();
            if (need_mu > 0)
                mu = timer.time("spectrum:neumann", [&] {
                    return analytic_spectrum(box.with_all_faces(BoundaryLabel::Neumann),
                                             need_mu);
                });
            if (need_mixed > 0)
                mixed = timer.time("spectrum:mixed",
                                   [&] { return analytic_spectrum(box, need_mixed); });
            if (need_dir > 0)
                dirichlet = timer.time("spectrum:dirichlet", [&] {
                    return analytic_spectrum(box.with_all_faces(BoundaryLabel::Dirichlet),
                                             need_dir);
                });
        }
    }
    if (need_mu > 0) res.spectra.emplace_back("neumann", mu);
    if (need_mixed > 0) res.spectra.emplace_back("mixed", mixed);
    if (need_dir > 0) res.spectra.emplace_back("dirichlet", dirichlet);
    if (need_shrunken) res.spectra.emplace_back("mixed_shrunken", shrunken);

    for (const CheckSpec& spec : sc.checks) {
        if (spec.check == "chain") {
            res.reports.push_back(
                timer.time("chain", [&] { return check_chain(mu, mixed, dirichlet, sc.k_max); }));
        } else if (spec.check == "neumann_mixed") {
            res.reports.push_back(timer.time("neumann_mixed", [&] {
                return check_neumann_mixed(mu, mixed, dim_S_N, sc.k_max);
            }));
        } else if (spec.check == "dirichlet_mixed") {
            res.reports.push_back(timer.time("dirichlet_mixed", [&] {
                return check_dirichlet_mixed(mixed, dirichlet, std::max(dim_S_D, 0), sc.k_max,
                                             spec.shift);
            }));
        } else if (spec.check == "levine_weinberger") {
            res.reports.push_back(timer.time("levine_weinberger", [&] {
                return check_levine_weinberger(mu, dirichlet, d, sc.k_max, spec.shift);
            }));
        } else if (spec.check == "monotonicity") {
            res.reports.push_back(timer.time("monotonicity", [&] {
                return check_monotonicity(shrunken, mixed, sc.k_max);
            }));
        } else if (spec.check == "identity") {
            res.ran_identity = true;
            auto rows = timer.time("identity", [&] {
                return identity_rows_for(sc.polygon(), sc.name, spec.extras);
            });
            for (const auto& row : rows)
                if (!identity_row_holds(row)) res.identity_holds = false;
            res.identity_rows.insert(res.identity_rows.end(), rows.begin(), rows.end());
        }
    }
    return res;
}

bool ScenarioResult::ok() const {
    for (const auto& rep : reports)
        if (!rep.passes()) return false;
    return !ran_identity || identity_holds;
}

} // namespace speclab
