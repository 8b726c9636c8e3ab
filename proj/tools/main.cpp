#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "speclab/format.hpp"
#include "speclab/scenario.hpp"

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

namespace {

int thread_cap() {
    int cap = 1;
    if (const char* env = std::getenv("SPECLAB_THREADS")) {
        try {
            cap = std::max(1, std::stoi(env));
        } catch (const std::exception&) {
            cap = 1;
        }
    }
    return cap;
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
}

std::string spectrum_csv(const speclab::Spectrum& s) {
    std::ostringstream os;
    os << "k,value,uncertainty,indices\n";
    for (int k = 0; k < s.size(); ++k) {
        os << (k + 1) << ",";
        if (s.exact)
            os << speclab::fmt_quarters(s.quarters[k]) << ",0,";
        else
            os << speclab::fmt_g17(s.values[k]) << ","
               << speclab::fmt_g17(s.uncertainties[k]) << ",";
        if (k < static_cast<int>(s.tuples.size())) {
            const auto& t = s.tuples[k];
            os << t[0] << "." << t[1];
            if (t[2] > 0) os << "." << t[2];
        }
        os << "\n";
    }
    return os.str();
}

std::string report_csv(const speclab::InequalityReport& rep) {
    std::ostringstream os;
    speclab::write_report_csv(os, rep);
    return os.str();
}

std::string identity_csv(const std::vector<speclab::IdentityRow>& rows) {
    std::ostringstream os;
    speclab::write_identity_csv(os, rows);
    return os.str();
}

ojson rows_json(const speclab::InequalityReport& rep) {
    ojson rows = ojson::array();
    for (const auto& r : rep.rows) {
        ojson row;
        row["claim"] = r.claim;
        row["k"] = r.k;
        if (r.exact) {
            row["lhs"] = speclab::fmt_quarters(r.lhs_quarters);
            row["rhs"] = speclab::fmt_quarters(r.rhs_quarters);
            row["margin"] = speclab::fmt_quarters(r.rhs_quarters - r.lhs_quarters);
            row["uncertainty"] = 0.0;
        } else {
            row["lhs"] = r.lhs;
            row["rhs"] = r.rhs;
            row["margin"] = r.margin;
            row["uncertainty"] = r.uncertainty;
        }
        row["verdict"] = speclab::to_string(r.verdict);
        rows.push_back(row);
    }
    return rows;
}

ojson summary_json(const speclab::Scenario& sc, const speclab::ScenarioResult& res,
                   const std::vector<std::string>& files, bool embed_rows) {
    ojson doc;
    doc["scenario"] = res.name;
    doc["k_max"] = sc.k_max;
    doc["levels"] = sc.levels;
    ojson checks = ojson::array();
    for (const auto& rep : res.reports) {
        ojson c;
        c["claim"] = rep.claim;
        c["verdict"] = speclab::to_string(rep.overall());
        c["hypothesis_satisfied"] = rep.hypothesis_satisfied;
        c["probe"] = rep.probe;
        c["strict"] = rep.strict;
        c["rows"] = rep.rows.size();
        c["passes"] = rep.passes();
        if (embed_rows) c["detail"] = rows_json(rep);
        checks.push_back(c);
    }
    if (res.ran_identity) {
        ojson c;
        c["claim"] = "identity";
        c["verdict"] = res.identity_holds ? "HOLDS" : "VIOLATED";
        c["hypothesis_satisfied"] = true;
        c["probe"] = false;
        c["rows"] = res.identity_rows.size();
        c["passes"] = res.identity_holds;
        checks.push_back(c);
    }
    doc["checks"] = checks;
    doc["passes"] = res.ok();
    ojson timings;
    for (const auto& [stage, ms] : res.timings_ms) timings[stage] = ms;
    doc["timings_ms"] = timings;
    doc["files"] = files;
    return doc;
}

/// Writes the per-check CSVs plus the summary JSON; returns the summary.
ojson write_outputs(const speclab::Scenario& sc, const speclab::ScenarioResult& res,
                    const fs::path& dir) {
    fs::create_directories(dir);
    std::vector<std::string> files;
    for (const auto& [tag, spectrum] : res.spectra) {
        const std::string fname = res.name + "_spectrum_" + tag + ".csv";
        write_file(dir / fname, spectrum_csv(spectrum));
        files.push_back(fname);
    }
    for (const auto& rep : res.reports) {
        const std::string fname = res.name + "_" + rep.claim + ".csv";
        write_file(dir / fname, report_csv(rep));
        files.push_back(fname);
    }
    if (res.ran_identity) {
        const std::string fname = res.name + "_identity.csv";
        write_file(dir / fname, identity_csv(res.identity_rows));
        files.push_back(fname);
    }
    const ojson doc = summary_json(sc, res, files, false);
    write_file(dir / (res.name + "_summary.json"), doc.dump(2) + "\n");
    return doc;
}

int run_check(const std::string& scenario_path, std::optional<int> levels,
              std::optional<int> kmax, const std::string& format,
              const std::string& out_path) {
    speclab::Scenario sc = speclab::load_scenario(scenario_path);
    if (levels) sc.levels = *levels;   // flag overrides scenario field
    if (kmax) sc.k_max = *kmax;
    if (sc.levels < 2) throw speclab::Error(speclab::ErrorCode::SchemaError,
                                            "/levels: expected an integer >= 2");
    if (sc.k_max < 1) throw speclab::Error(speclab::ErrorCode::SchemaError,
                                           "/k_max: expected an integer >= 1");
    const speclab::ScenarioResult res = speclab::run_scenario(sc);

    if (format == "json") {
        ojson doc = summary_json(sc, res, {}, true);
        if (res.ran_identity) {
            ojson rows = ojson::array();
            for (const auto& r : res.identity_rows) {
                ojson row;
                row["domain"] = r.domain;
                row["j"] = r.j;
                row["k"] = r.k;
                row["m"] = r.m;
                row["extra_id"] = r.extra_id;
                row["lhs"] = r.lhs;
                row["rhs"] = r.rhs;
                row["residual"] = r.residual;
                rows.push_back(row);
            }
            doc["identity_rows"] = rows;
        }
        const std::string text = doc.dump(2) + "\n";
        if (out_path.empty())
            std::cout << text;
        else
            write_file(out_path, text);
    } else {
        const ojson doc = write_outputs(sc, res, out_path.empty() ? "." : out_path);
        for (const auto& c : doc["checks"])
            std::cout << res.name << " " << c["claim"].get<std::string>() << ": "
                      << c["verdict"].get<std::string>()
                      << (c["probe"].get<bool>() ? " (probe)" : "") << "\n";
    }
    return res.ok() ? 0 : 2;
}

int run_suite(const std::string& out_dir) {
    const auto& bundled = speclab::bundled_scenarios();
    const int threads = std::min<int>(thread_cap(), static_cast<int>(bundled.size()));

    std::vector<speclab::Scenario> scenarios;
    for (const auto& b : bundled) scenarios.push_back(speclab::parse_scenario_json(b.text));

    std::vector<speclab::ScenarioResult> results(scenarios.size());
    std::vector<std::string> errors(scenarios.size());
    auto worker = [&](size_t i) {
        try {
            results[i] = speclab::run_scenario(scenarios[i]);
        } catch (const std::exception& e) {
            errors[i] = e.what();
        }
    };
    if (threads <= 1) {
        for (size_t i = 0; i < scenarios.size(); ++i) worker(i);
    } else {
        for (size_t base = 0; base < scenarios.size(); base += threads) {
            std::vector<std::thread> pool;
            for (size_t i = base; i < std::min(base + threads, scenarios.size()); ++i)
                pool.emplace_back(worker, i);
            for (auto& t : pool) t.join();
        }
    }

    int exit_code = 0;
    ojson suite = ojson::array();
    for (size_t i = 0; i < scenarios.size(); ++i) {
        if (!errors[i].empty()) {
            std::cerr << "error: " << scenarios[i].name << ": " << errors[i] << "\n";
            return 1;
        }
        const ojson doc = write_outputs(scenarios[i], results[i], out_dir);
        ojson entry;
        entry["scenario"] = results[i].name;
        entry["passes"] = results[i].ok();
        suite.push_back(entry);
        std::cout << results[i].name << ": " << (results[i].ok() ? "pass" : "VIOLATED") << "\n";
        if (!results[i].ok()) exit_code = 2;
    }
    ojson doc;
    doc["scenarios"] = suite;
    doc["passes"] = exit_code == 0;
    write_file(fs::path(out_dir) / "suite_summary.json", doc.dump(2) + "\n");
    return exit_code;
}

int run_spectrum(const std::string& scenario_path, const std::string& kind,
                 std::optional<int> kmax) {
    speclab::Scenario sc = speclab::load_scenario(scenario_path);
    if (kmax) sc.k_max = *kmax;
    speclab::Spectrum s;
    if (sc.is_polygon()) {
        speclab::ProblemKind pk = speclab::ProblemKind::Mixed;
        if (kind == "d") pk = speclab::ProblemKind::Dirichlet;
        else if (kind == "n") pk = speclab::ProblemKind::Neumann;
        s = speclab::fem_spectrum(sc.polygon(), pk, sc.k_max, sc.levels);
    } else {
        speclab::BoxDomain box = sc.box();
        if (kind == "d") box = box.with_all_faces(speclab::BoundaryLabel::Dirichlet);
        else if (kind == "n") box = box.with_all_faces(speclab::BoundaryLabel::Neumann);
        s = speclab::analytic_spectrum(box, sc.k_max);
    }
    std::cout << spectrum_csv(s);
    return 0;
}

int run_identity(const std::string& domain_arg, const std::string& out_path) {
    std::vector<speclab::IdentityRow> rows;
    bool polygon_case = false;
    if (domain_arg == "disk") {
        rows = speclab::identity_rows_for_disk(speclab::default_extra_ids());
    } else {
        std::ifstream in(domain_arg);
        if (!in)
            throw speclab::Error(speclab::ErrorCode::SchemaError,
                                 "/: cannot read domain file " + domain_arg);
        std::ostringstream buf;
        buf << in.rdbuf();
        // Accept either a bare domain document or a scenario containing one.
        const std::string text = "{\"name\":\"identity\",\"domain\":" + buf.str() +
                                 ",\"checks\":[{\"check\":\"identity\"}]}";
        speclab::Scenario sc;
        try {
            sc = speclab::parse_scenario_json(text);
        } catch (const speclab::Error&) {
            sc = speclab::parse_scenario_json(buf.str());
        }
        if (!sc.is_polygon())
            throw speclab::Error(speclab::ErrorCode::SchemaError,
                                 "/domain/type: identity requires a polygon domain or \"disk\"");
        polygon_case = true;
        rows = speclab::identity_rows_for(sc.polygon(), fs::path(domain_arg).stem().string(),
                                          speclab::default_extra_ids());
    }
    const std::string csv = identity_csv(rows);
    if (out_path.empty())
        std::cout << csv;
    else
        write_file(out_path, csv);
    if (polygon_case)
        for (const auto& r : rows)
            if (!speclab::identity_row_holds(r)) return 2;
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"speclab: Laplacian eigenvalue inequalities on polygons and boxes"};
    app.require_subcommand(1);

    auto* suite = app.add_subcommand("suite", "run all bundled scenarios");
    std::string suite_out = "suite-out";
    suite->add_option("--out", suite_out, "output directory")->required();

    auto* check = app.add_subcommand("check", "run one scenario file");
    std::string check_scenario;
    std::optional<int> check_levels, check_kmax;
    std::string check_format = "csv";
    std::string check_out;
    check->add_option("--scenario", check_scenario, "scenario JSON file")->required();
    check->add_option("--levels", check_levels, "override scenario refinement levels");
    check->add_option("--kmax", check_kmax, "override scenario k_max");
    check->add_option("--format", check_format, "csv (files) or json (single document)")
        ->check(CLI::IsMember({"csv", "json"}));
    check->add_option("--out", check_out, "output directory (csv) or file (json)");

    auto* spectrum = app.add_subcommand("spectrum", "print one spectrum as CSV");
    std::string spectrum_scenario, spectrum_kind;
    std::optional<int> spectrum_kmax;
    spectrum->add_option("--scenario", spectrum_scenario, "scenario JSON file")->required();
    spectrum->add_option("--kind", spectrum_kind, "d | n | mixed")
        ->required()
        ->check(CLI::IsMember({"d", "n", "mixed"}));
    spectrum->add_option("--kmax", spectrum_kmax, "override scenario k_max");

    auto* identity = app.add_subcommand("identity", "certify the integral identity");
    std::string identity_domain, identity_out;
    identity->add_option("--domain", identity_domain, "polygon domain JSON file or \"disk\"")
        ->required();
    identity->add_option("--out", identity_out, "output CSV path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (suite->parsed()) return run_suite(suite_out);
        if (check->parsed())
            return run_check(check_scenario, check_levels, check_kmax, check_format, check_out);
        if (spectrum->parsed()) return run_spectrum(spectrum_scenario, spectrum_kind, spectrum_kmax);
        if (identity->parsed()) return run_identity(identity_domain, identity_out);
    } catch (const speclab::Error& e) {
        std::cerr << "error [" << speclab::to_string(e.code()) << "]: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
