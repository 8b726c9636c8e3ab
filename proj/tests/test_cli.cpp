// End-to-end tests of the installed CLI binary (path injected by the build).

#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path fresh_dir(const std::string& tag) {
    const fs::path dir = fs::temp_directory_path() / ("speclab_cli_" + tag);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

RunResult run_cli(const std::string& args, const fs::path& dir) {
    const fs::path out = dir / "stdout.txt";
    const fs::path err = dir / "stderr.txt";
    const std::string cmd = std::string(SPECLAB_CLI_PATH) + " " + args + " > " +
                            out.string() + " 2> " + err.string();
    const int rc = std::system(cmd.c_str());
    RunResult res;
    res.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    res.out = slurp(out);
    res.err = slurp(err);
    return res;
}

fs::path write_scenario(const fs::path& dir, const std::string& name,
                        const std::string& text) {
    const fs::path p = dir / name;
    std::ofstream(p, std::ios::binary) << text;
    return p;
}

const std::string kBoxScenario = R"({
    "name": "pi_box_cli",
    "domain": {
        "type": "box",
        "lengths": ["pi", "pi"],
        "faces": {"x": ["N", "N"], "y": ["D", "N"]}
    },
    "k_max": 6,
    "checks": [{"check": "chain"}, {"check": "neumann_mixed"}]
})";

const std::string kMissingLabels = R"({
    "name": "broken",
    "domain": {
        "type": "polygon",
        "vertices": [[0, 0], [1, 0], [0, 1]]
    },
    "checks": [{"check": "chain"}]
})";

std::vector<fs::path> sorted_csv_files(const fs::path& dir) {
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.is_regular_file() && e.path().extension() == ".csv") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    return files;
}

} // namespace

TEST_CASE("cli: malformed scenario exits 1 and names the missing field") {
    const fs::path dir = fresh_dir("malformed");
    const fs::path sc = write_scenario(dir, "broken.json", kMissingLabels);
    const RunResult res = run_cli("check --scenario " + sc.string(), dir);
    CHECK(res.exit_code == 1);
    CHECK(res.err.find("labels") != std::string::npos);
    CHECK(res.err.find("error") != std::string::npos);
}

TEST_CASE("cli: check on a valid box scenario exits 0 and honors --kmax") {
    const fs::path dir = fresh_dir("check_json");
    const fs::path sc = write_scenario(dir, "box.json", kBoxScenario);
    const RunResult res =
        run_cli("check --scenario " + sc.string() + " --kmax 3 --format json", dir);
    REQUIRE(res.exit_code == 0);

    const nlohmann::json summary = nlohmann::json::parse(res.out);
    CHECK(summary.at("scenario") == "pi_box_cli");
    CHECK(summary.at("k_max") == 3); // flag overrides the scenario field (6)
    CHECK(summary.at("passes") == true);
    REQUIRE(summary.at("checks").size() == 2);
    CHECK(summary["checks"][0].at("claim") == "chain");
    CHECK(summary["checks"][0].at("rows") == 6); // two rows per k
    CHECK(summary["checks"][1].at("claim") == "neumann_mixed");
}

TEST_CASE("cli: rerunning the same scenario produces byte-identical outputs") {
    const fs::path dir = fresh_dir("determinism");
    const fs::path sc = write_scenario(dir, "box.json", kBoxScenario);
    const fs::path out_a = dir / "a";
    const fs::path out_b = dir / "b";
    const RunResult ra =
        run_cli("check --scenario " + sc.string() + " --out " + out_a.string(), dir);
    const RunResult rb =
        run_cli("check --scenario " + sc.string() + " --out " + out_b.string(), dir);
    REQUIRE(ra.exit_code == 0);
    REQUIRE(rb.exit_code == 0);

    // The summary JSON embeds wall-clock timings; the determinism contract is
    // on the data files.
    const auto files_a = sorted_csv_files(out_a);
    const auto files_b = sorted_csv_files(out_b);
    REQUIRE_FALSE(files_a.empty());
    REQUIRE(files_a.size() == files_b.size());
    for (size_t i = 0; i < files_a.size(); ++i) {
        CAPTURE(files_a[i].filename().string());
        CHECK(files_a[i].filename() == files_b[i].filename());
        CHECK(slurp(files_a[i]) == slurp(files_b[i]));
    }
    CHECK(fs::exists(out_a / "pi_box_cli_summary.json"));
}

TEST_CASE("cli: exact Dirichlet spectrum rows print as reduced rationals") {
    const fs::path dir = fresh_dir("spectrum");
    const fs::path sc = write_scenario(dir, "box.json", kBoxScenario);
    const RunResult res =
        run_cli("spectrum --scenario " + sc.string() + " --kind d --kmax 4", dir);
    REQUIRE(res.exit_code == 0);
    std::istringstream lines(res.out);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "k,value,uncertainty,indices");
    std::getline(lines, line);
    CHECK(line == "1,2,0,1.1");
    std::getline(lines, line);
    CHECK(line == "2,5,0,1.2");
    std::getline(lines, line);
    CHECK(line == "3,5,0,2.1");
    std::getline(lines, line);
    CHECK(line == "4,8,0,2.2");
}

TEST_CASE("cli: identity subcommand reports the disk counterexample") {
    const fs::path dir = fresh_dir("identity_disk");
    const RunResult res = run_cli("identity --domain disk", dir);
    CHECK(res.exit_code == 0); // informational: the identity is expected to fail off-polytopes
    CHECK(res.out.find("disk") != std::string::npos);
}

TEST_CASE("cli: suite runs every bundled scenario and writes a summary") {
    const fs::path dir = fresh_dir("suite");
    const fs::path out = dir / "suite_out";
    const RunResult res = run_cli("suite --out " + out.string(), dir);
    REQUIRE(res.exit_code == 0);

    const nlohmann::json summary = nlohmann::json::parse(slurp(out / "suite_summary.json"));
    CHECK(summary.at("passes") == true);
    CHECK(summary.at("scenarios").size() >= 5);
    for (const auto& entry : summary.at("scenarios")) {
        CAPTURE(entry.at("scenario").get<std::string>());
        CHECK(entry.at("passes") == true);
    }
}
