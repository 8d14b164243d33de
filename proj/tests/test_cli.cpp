// End-to-end tests of the command-line tool. The binary location comes from
// the GAPBOUND_CLI environment variable (set by the build registration),
// falling back to ./gapbound in the working directory.
#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"

using nlohmann::json;

namespace {

struct CliResult {
    int exit_code;
    std::string out;
};

std::string cli_path() {
    const char* env = std::getenv("GAPBOUND_CLI");
    return (env != nullptr && *env != '\0') ? env : "./gapbound";
}

// Runs `<env_prefix> <binary> <args>` under /bin/sh, capturing stdout.
// stderr is dropped unless merge_stderr is set.
CliResult run_cli(const std::string& args, const std::string& env_prefix = "",
                  bool merge_stderr = false) {
    std::string cmd = env_prefix.empty() ? cli_path() : env_prefix + " " + cli_path();
    cmd += " " + args;
    cmd += merge_stderr ? " 2>&1" : " 2>/dev/null";
    std::FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    std::size_t got = 0;
    while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
    const int rc = pclose(pipe);
    REQUIRE(rc != -1);
    return {WIFEXITED(rc) ? WEXITSTATUS(rc) : -1, out};
}

int count_lines(const std::string& text) {
    int n = 0;
    for (char ch : text) n += (ch == '\n');
    return n;
}

}  // namespace

TEST_CASE("reproduce: all published constants match, exit 0") {
    const auto r = run_cli("reproduce --json");
    REQUIRE(r.exit_code == 0);
    const json doc = json::parse(r.out);
    CHECK(doc.at("command") == "reproduce");
    CHECK(doc.at("pass") == true);
    const auto& rows = doc.at("rows");
    REQUIRE(rows.size() == 6);
    const std::vector<std::string> expected{"c0", "beta0", "phi0", "h_c0", "gap_v1", "gap_v2"};
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].at("constant") == expected[i]);
        CHECK(rows[i].at("pass") == true);
        const double computed = rows[i].at("computed").get<double>();
        const double reference = rows[i].at("reference").get<double>();
        const double tolerance = rows[i].at("tolerance").get<double>();
        CHECK(std::fabs(computed - reference) <= tolerance);
    }
}

TEST_CASE("reproduce: byte-identical output across runs") {
    const auto a = run_cli("reproduce --json");
    const auto b = run_cli("reproduce --json");
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    const auto c = run_cli("reproduce --format csv");
    const auto d = run_cli("reproduce --format csv");
    CHECK(c.out == d.out);
}

TEST_CASE("reproduce: human and csv formats") {
    const auto human = run_cli("reproduce");
    CHECK(human.exit_code == 0);
    CHECK(human.out.find("overall: pass") != std::string::npos);

    const auto csv = run_cli("reproduce --format csv");
    CHECK(csv.exit_code == 0);
    CHECK(csv.out.rfind("constant,computed,reference,tolerance,pass\n", 0) == 0);
    CHECK(count_lines(csv.out) == 7);  // header + six constants
    CHECK(csv.out.find(",false") == std::string::npos);
}

TEST_CASE("reproduce: --out writes the same bytes to a file") {
    const std::string path = "cli_reproduce_out.json";
    const auto direct = run_cli("reproduce --json");
    const auto filed = run_cli("reproduce --json --out " + path);
    CHECK(filed.exit_code == 0);
    CHECK(filed.out.empty());
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::stringstream content;
    content << in.rdbuf();
    CHECK(content.str() == direct.out);
    in.close();
    std::remove(path.c_str());
}

TEST_CASE("critical-c: defaults and environment overrides") {
    const auto r = run_cli("critical-c --json");
    REQUIRE(r.exit_code == 0);
    const json doc = json::parse(r.out);
    CHECK(doc.at("command") == "critical-c");
    const double c_star = doc.at("c_star").get<double>();
    CHECK(c_star >= 0.504193);
    CHECK(c_star <= 0.504204);
    CHECK(doc.at("h_star").get<double>() < 1.0);
    CHECK(doc.at("tol_c").get<double>() == 1e-5);

    // Environment supplies the default; an explicit flag still wins.
    const auto env = run_cli("critical-c --json", "GAPBOUND_TOL_C=1e-4");
    CHECK(json::parse(env.out).at("tol_c").get<double>() == 1e-4);
    const auto flag = run_cli("critical-c --json --tol-c 2e-5", "GAPBOUND_TOL_C=1e-4");
    CHECK(json::parse(flag.out).at("tol_c").get<double>() == 2e-5);
    // Unparseable environment values fall back to the built-in default.
    const auto bad = run_cli("critical-c --json", "GAPBOUND_TOL_C=banana");
    CHECK(bad.exit_code == 0);
    CHECK(json::parse(bad.out).at("tol_c").get<double>() == 1e-5);
}

TEST_CASE("scan: exact row counts and the minimum near the published weight") {
    const auto two = run_cli("scan --c 0.5042 --steps 2 --format csv");
    REQUIRE(two.exit_code == 0);
    CHECK(two.out.rfind("beta,phi0,g_max,h_upper,case,maximizer\n", 0) == 0);
    CHECK(count_lines(two.out) == 3);  // header + exactly the two endpoints

    const auto r = run_cli("scan --c 0.5042 --steps 51 --json");
    REQUIRE(r.exit_code == 0);
    const json doc = json::parse(r.out);
    const auto& rows = doc.at("rows");
    REQUIRE(rows.size() == 51);
    double best_beta = 0.0, best_h = 1e9;
    for (const auto& row : rows) {
        const double h = row.at("h_upper").get<double>();
        if (h < best_h) {
            best_h = h;
            best_beta = row.at("beta").get<double>();
        }
    }
    CHECK(std::fabs(best_beta - 0.476) <= 0.004);
    CHECK(best_h < 1.0);
    // The endpoint row beta = 1/2 must be flagged as the closed-form case.
    const auto& last = rows[rows.size() - 1];
    CHECK(last.at("beta").get<double>() == 0.5);
    CHECK(last.at("case") == "endpoint");
    CHECK(last.at("phi0").is_null());
}

TEST_CASE("verify: certifies below the threshold, rejects above, warns on tiny grids") {
    const auto pass = run_cli("verify --c 0.5042 --beta 0.476 --grid 10001 --json");
    CHECK(pass.exit_code == 0);
    const json ok = json::parse(pass.out);
    CHECK(ok.at("passes") == true);
    CHECK(ok.at("derivative_monotone") == true);
    CHECK(ok.at("max_value").get<double>() < 1.0);

    const auto fail = run_cli("verify --c 0.55 --beta 0.476 --grid 10001 --json");
    CHECK(fail.exit_code == 1);
    const json bad = json::parse(fail.out);
    CHECK(bad.at("passes") == false);
    CHECK(bad.at("max_value").get<double>() > 1.0);

    const auto warned = run_cli("verify --c 0.5042 --grid 2", "", true);
    CHECK(warned.out.find("endpoints only") != std::string::npos);
}

TEST_CASE("large-gaps: thresholds to printed precision, bracket failures exit 1") {
    const auto v1 = run_cli("large-gaps --variant v1 --json");
    REQUIRE(v1.exit_code == 0);
    const json doc = json::parse(v1.out);
    CHECK(std::fabs(doc.at("threshold").get<double>() - 5.5602) <= 1e-4);
    const auto& rows = doc.at("rows");
    REQUIRE(rows.size() == 7);
    CHECK(rows[3].at("is_threshold") == true);
    CHECK(rows[0].at("is_threshold") == false);
    CHECK(rows[0].at("h_lower").get<double>() < 1.0);
    CHECK(rows[6].at("h_lower").get<double>() > 1.0);

    const auto v2 = run_cli("large-gaps --variant v2 --json");
    REQUIRE(v2.exit_code == 0);
    CHECK(std::fabs(json::parse(v2.out).at("threshold").get<double>() - 3.6747) <= 1e-4);

    const auto bad = run_cli("large-gaps --variant v2 --bracket 1 2 --json");
    CHECK(bad.exit_code == 1);
}

TEST_CASE("oracle: chain audit passes end to end") {
    const auto r = run_cli("oracle --t-exp 3 --json");
    REQUIRE(r.exit_code == 0);
    const json doc = json::parse(r.out);
    CHECK(doc.at("scheme") == "ones");
    CHECK(std::fabs(doc.at("run").at("ratio").get<double>() - 0.42262090162048543) <= 1e-9);
    const auto& audit = doc.at("audit");
    CHECK(audit.at("split_holds") == true);
    CHECK(audit.at("divisor_holds") == true);
    CHECK(audit.at("ratio_within") == true);
    CHECK(audit.at("passes") == true);

    const auto b1 = run_cli("oracle --t-exp 3 --scheme b1-only --json");
    REQUIRE(b1.exit_code == 0);
    const json bdoc = json::parse(b1.out);
    CHECK(bdoc.at("run").at("S").get<double>() == 0.0);
    CHECK(bdoc.at("run").at("ratio").get<double>() == 0.0);
}

TEST_CASE("oracle: sieve cache is created and reused") {
    const std::string cache = "cli_oracle_cache.bin";
    std::remove(cache.c_str());
    const auto first = run_cli("oracle --t-exp 3 --sieve-cache " + cache + " --json");
    REQUIRE(first.exit_code == 0);
    std::ifstream probe(cache, std::ios::binary);
    CHECK(probe.good());
    probe.close();
    const auto second = run_cli("oracle --t-exp 3 --sieve-cache " + cache + " --json");
    REQUIRE(second.exit_code == 0);
    CHECK(first.out == second.out);
    std::remove(cache.c_str());
}

TEST_CASE("usage errors exit with code 2") {
    CHECK(run_cli("").exit_code == 2);                        // missing subcommand
    CHECK(run_cli("scan").exit_code == 2);                    // missing required --c
    CHECK(run_cli("scan --c 2.0").exit_code == 2);            // c out of range
    CHECK(run_cli("verify --c 0.5 --grid 1").exit_code == 2); // degenerate grid
    CHECK(run_cli("large-gaps --variant v3").exit_code == 2); // unknown variant
    CHECK(run_cli("oracle --t-exp 9").exit_code == 2);        // unsupported scale
    CHECK(run_cli("reproduce --no-such-flag").exit_code == 2);
    CHECK(run_cli("--help").exit_code == 0);                  // help is not an error
}
