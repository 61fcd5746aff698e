// End-to-end tests of the installed command-line surface: subcommands, exit
// codes, output formats, config-file precedence, determinism.

#include <sys/wait.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>

#ifndef RWENT_CLI_PATH
#error "RWENT_CLI_PATH must point at the built binary"
#endif

namespace {

struct RunResult {
    int exit_code;
    std::string output;  // stdout + stderr
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(RWENT_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf;
    size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0)
        out.append(buf.data(), n);
    const int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
}

double field_value(const std::string& out, const std::string& key) {
    const std::string needle = key + "=";
    size_t pos = 0;
    while ((pos = out.find(needle, pos)) != std::string::npos) {
        if (pos == 0 || out[pos - 1] == '\n')
            return std::strtod(out.c_str() + pos + needle.size(), nullptr);
        ++pos;
    }
    FAIL("missing field: " << key << " in\n" << out);
    return 0.0;
}

}  // namespace

TEST_CASE("entropy: massless fermion mode carries nothing") {
    const RunResult r =
        run_cli("entropy --stats fermion --mass 0 --k 1 --rho 1 --epsilon 1");
    CHECK(r.exit_code == 0);
    CHECK(field_value(r.output, "entropy_fermion_bits") == 0.0);
}

TEST_CASE("entropy: asymptotic values at eps = 1e6") {
    const RunResult r = run_cli(
        "entropy --stats both --mass 1 --k 1 --rho 1 --epsilon 1e6");
    CHECK(r.exit_code == 0);
    const double sb = field_value(r.output, "entropy_boson_bits");
    const double sf = field_value(r.output, "entropy_fermion_bits");
    CHECK(sb > 0.091);
    CHECK(sb < 0.094);
    CHECK(sf > 0.0045);
    CHECK(sf < 0.0051);
}

TEST_CASE("entropy: invalid flag value exits 2 and names the flag") {
    const RunResult r = run_cli("entropy --mass -1 --k 1 --rho 1 --epsilon 1");
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("--mass") != std::string::npos);
}

TEST_CASE("unknown subcommand exits 2") {
    CHECK(run_cli("frobnicate").exit_code == 2);
}

TEST_CASE("sweep: count rows, deterministic bytes, round-trip file") {
    const char* path = "cli_sweep_test.csv";
    const std::string args =
        std::string("sweep --axis k --from 0.01 --to 100 --count 5 --mass 1 "
                    "--rho 1 --epsilon 1 --reproducible --out ") + path;
    const RunResult r1 = run_cli(args);
    CHECK(r1.exit_code == 0);
    std::ifstream f1(path);
    std::stringstream s1;
    s1 << f1.rdbuf();
    const RunResult r2 = run_cli(args);
    CHECK(r2.exit_code == 0);
    std::ifstream f2(path);
    std::stringstream s2;
    s2 << f2.rdbuf();
    CHECK(s1.str() == s2.str());  // byte-identical under --reproducible
    // header present, 5 data rows
    int data_rows = 0;
    bool header = false;
    std::string line;
    std::stringstream ss(s1.str());
    while (std::getline(ss, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header) {
            header = true;
            CHECK(line.rfind("k,mass,rho,epsilon,", 0) == 0);
            continue;
        }
        ++data_rows;
    }
    CHECK(data_rows == 5);
    std::remove(path);
}

TEST_CASE("sweep: fermionic peak is interior, bosonic column decreases") {
    const RunResult r = run_cli(
        "sweep --axis k --from 0.01 --to 100 --count 50 --mass 1 --rho 1 "
        "--epsilon 1 --reproducible");
    CHECK(r.exit_code == 0);
    std::stringstream ss(r.output);
    std::string line;
    std::vector<double> sf, sb;
    bool header = false;
    while (std::getline(ss, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header) {
            header = true;
            continue;
        }
        // columns 6 and 8
        std::stringstream ls(line);
        std::string cell;
        std::vector<std::string> cells;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        sf.push_back(std::strtod(cells[5].c_str(), nullptr));
        sb.push_back(std::strtod(cells[7].c_str(), nullptr));
    }
    REQUIRE(sf.size() == 50);
    int maxima = 0;
    for (size_t i = 1; i + 1 < sf.size(); ++i)
        if (sf[i] > sf[i - 1] && sf[i] > sf[i + 1]) ++maxima;
    CHECK(maxima == 1);
    for (size_t i = 1; i < sb.size(); ++i) CHECK(sb[i] < sb[i - 1]);
}

TEST_CASE("sweep: json format") {
    const RunResult r = run_cli(
        "sweep --axis k --from 0.5 --to 2 --count 2 --mass 1 --rho 1 "
        "--epsilon 1 --format json --reproducible");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("\"rows\"") != std::string::npos);
    CHECK(r.output.find("\"entropy_boson_bits\"") != std::string::npos);
}

TEST_CASE("sweep: unwritable output path exits nonzero with the path named") {
    const RunResult r = run_cli(
        "sweep --axis k --from 0.5 --to 2 --count 2 --mass 1 --rho 1 "
        "--epsilon 1 --out /nonexistent-dir/x.csv");
    CHECK(r.exit_code == 1);
    CHECK(r.output.find("/nonexistent-dir/x.csv") != std::string::npos);
}

TEST_CASE("epsilon-bound: published thresholds and domain validation") {
    const RunResult r = run_cli("epsilon-bound --entropy 0.87");
    CHECK(r.exit_code == 0);
    const double eps = field_value(r.output, "eps_min");
    CHECK(eps > 9.0);
    CHECK(eps < 11.0);

    CHECK(run_cli("epsilon-bound --entropy 1.5").exit_code == 2);
}

TEST_CASE("optimal-k and estimate-rho round trip") {
    const RunResult ropt = run_cli("optimal-k --mass 1 --rho 50 --epsilon 1");
    CHECK(ropt.exit_code == 0);
    const double k_star = field_value(ropt.output, "k_star");
    CHECK(k_star > 0.0);

    std::ostringstream cmd;
    cmd << "estimate-rho --mass 1 --k-observed " << k_star
        << " --bracket 1 2000";
    const RunResult rest = run_cli(cmd.str());
    CHECK(rest.exit_code == 0);
    const double est = field_value(rest.output, "estimate");
    CHECK(std::abs(est - 50.0) / 50.0 < 0.01);
}

TEST_CASE("estimate-rho: bracket failure exits 1 naming the kind") {
    const RunResult r = run_cli(
        "estimate-rho --mass 1 --k-observed 1e-9 --bracket 1 2000");
    CHECK(r.exit_code == 1);
    CHECK(r.output.find("bracket-failure") != std::string::npos);
}

TEST_CASE("config file supplies defaults, flags win") {
    const char* cfg = "cli_test_config.ini";
    {
        std::ofstream f(cfg);
        f << "mass=0\nk=1\nrho=1\nepsilon=1\nstats=fermion\n";
    }
    const RunResult r1 =
        run_cli(std::string("entropy --config ") + cfg);
    CHECK(r1.exit_code == 0);
    CHECK(field_value(r1.output, "entropy_fermion_bits") == 0.0);
    // flag overrides the config value
    const RunResult r2 =
        run_cli(std::string("entropy --config ") + cfg + " --mass 1");
    CHECK(r2.exit_code == 0);
    CHECK(field_value(r2.output, "entropy_fermion_bits") > 0.0);
    // effective config is echoed
    CHECK(r2.output.find("config.mass=1") != std::string::npos);
    std::remove(cfg);
}

TEST_CASE("oracle-check: tight tolerance demonstrates failure semantics") {
    // a single very benign fermion-dominated point with an unmeetable
    // tolerance must exit 1
    const RunResult r = run_cli(
        "oracle-check --grid \"epsilon=1;rho=1;mass=1;k=1\" --tol 1e-12");
    CHECK(r.exit_code == 1);
    CHECK(r.output.find("status=FAIL") != std::string::npos);
}

TEST_CASE("oracle-check: fermion rows pass at the default tolerance") {
    const RunResult r = run_cli(
        "oracle-check --grid \"epsilon=0.5,2;rho=0.5,2;mass=1;k=0.7\"");
    // exit code reflects the bosonic closed-form discrepancy; the fermion
    // rows themselves must all be ok
    std::stringstream ss(r.output);
    std::string line;
    int fermion_rows = 0;
    while (std::getline(ss, line)) {
        if (line.find("stat=fermion") == std::string::npos) continue;
        ++fermion_rows;
        CHECK(line.find("status=ok") != std::string::npos);
    }
    CHECK(fermion_rows == 4);
}

TEST_CASE("oracle-check: m=0 rows compare at absolute tolerance") {
    const RunResult r = run_cli(
        "oracle-check --grid \"epsilon=1;rho=1;mass=0;k=1\"");
    CHECK(r.exit_code == 0);
    std::stringstream ss(r.output);
    std::string line;
    while (std::getline(ss, line))
        if (line.find("stat=") != std::string::npos)
            CHECK(line.find("status=ok") != std::string::npos);
}

TEST_CASE("help exits 0") {
    CHECK(run_cli("--help").exit_code == 0);
    CHECK(run_cli("entropy --help").exit_code == 0);
}
