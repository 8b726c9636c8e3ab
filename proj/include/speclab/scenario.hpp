#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "speclab/identity.hpp"
#include "speclab/inequalities.hpp"

namespace speclab {

struct CheckSpec {
    std::string check; // chain | neumann_mixed | dirichlet_mixed |
                       // levine_weinberger | monotonicity | identity
    int shift = -1;    // probe shift for dirichlet_mixed / levine_weinberger
    double shrink = 0.5;              // monotonicity split parameter
    std::vector<std::string> extras;  // identity extra-factor ids
};

struct Scenario {
    std::string name;
    std::variant<std::monostate, PolygonDomain, BoxDomain> domain;
    int k_max = 6;
    int levels = 4;
    std::vector<CheckSpec> checks;

    bool is_polygon() const { return std::holds_alternative<PolygonDomain>(domain); }
    const PolygonDomain& polygon() const { return std::get<PolygonDomain>(domain); }
    const BoxDomain& box() const { return std::get<BoxDomain>(domain); }
};

/// Parses and validates a scenario document. Schema violations throw
/// Error(SchemaError) whose message starts with the JSON pointer of the
/// offending field. Number-valued fields accept the string "pi" for an exact
/// pi.
Scenario parse_scenario_json(const std::string& text);
Scenario load_scenario(const std::string& path);

/// Semantic prerequisites of every named check (convexity, label presence,
/// shrinkability), verified before any spectrum is computed.
void validate_scenario(const Scenario& scenario);

struct ScenarioResult {
    std::string name;
    std::vector<InequalityReport> reports;
    std::vector<std::pair<std::string, Spectrum>> spectra; // problem-kind tag -> spectrum
    std::vector<IdentityRow> identity_rows;
    bool identity_holds = true;
    bool ran_identity = false;
    std::vector<std::pair<std::string, double>> timings_ms;

    /// False when any check with satisfied hypotheses is VIOLATED.
    bool ok() const;
};

ScenarioResult run_scenario(const Scenario& scenario);

/// Identity rows over all axis triples for the given extra factors
/// ("1", "x", "y", "x+y", "xy"); domain_name labels the CSV rows.
std::vector<IdentityRow> identity_rows_for(const PolygonDomain& domain,
                                           const std::string& domain_name,
                                           const std::vector<std::string>& extra_ids);
std::vector<IdentityRow> identity_rows_for_disk(const std::vector<std::string>& extra_ids);

/// Relative certification threshold for a computed identity row.
bool identity_row_holds(const IdentityRow& row);

const std::vector<std::string>& default_extra_ids();
Poly2 extra_by_id(const std::string& id);

struct BundledScenario {
    std::string name;
    std::string text; // scenario JSON document
};

/// The scenarios shipped with the tool (embedded at build time from the
/// scenarios/ directory).
const std::vector<BundledScenario>& bundled_scenarios();

} // namespace speclab
