#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <utility>

#include <sys/wait.h>
#include <unistd.h>

namespace fs = std::filesystem;

namespace {

struct CliResult {
    int exit_code = -1;
    std::string output; // stdout + stderr
};

CliResult run_cli(const std::string& args) {
    const std::string cmd = std::string(MEMWALK_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    CliResult res;
    char buf[512];
    while (fgets(buf, sizeof buf, pipe)) res.output += buf;
    const int status = pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

fs::path fresh_dir(const std::string& tag) {
    const fs::path dir =
        fs::temp_directory_path() / ("memwalk_test_" + tag + "_" +
                                     std::to_string(::getpid()));
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

fs::path write_config(const fs::path& dir, const std::string& body) {
    const fs::path path = dir / "run.cfg";
    std::ofstream out(path);
    out << body;
    return path;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string config_path(const char* name) {
    return (fs::path(MEMWALK_CONFIG_DIR) / name).string();
}

} // namespace

TEST_CASE("selftest subcommand passes", "[cli]") {
    const CliResult res = run_cli("selftest");
    INFO(res.output);
    CHECK(res.exit_code == 0);
    CHECK(res.output.find("all checks passed") != std::string::npos);
}

TEST_CASE("simulate writes the documented files", "[cli]") {
    const fs::path dir = fresh_dir("simulate");
    const CliResult res =
        run_cli("simulate --config " + config_path("linear.cfg") + " --out " +
                dir.string());
    INFO(res.output);
    REQUIRE(res.exit_code == 0);
    REQUIRE(fs::exists(dir / "density.csv"));
    REQUIRE(fs::exists(dir / "moments.csv"));
    REQUIRE(fs::exists(dir / "program.csv"));

    const std::string density = slurp(dir / "density.csv");
    CHECK(density.rfind("t,x,p\n", 0) == 0);
    CHECK(density.find("0,0,1\n") != std::string::npos);
    const std::string moments = slurp(dir / "moments.csv");
    CHECK(moments.rfind("t,mean,var,sigma\n", 0) == 0);
    fs::remove_all(dir);
}

TEST_CASE("simulate at T = 0 emits the single origin row", "[cli]") {
    const fs::path dir = fresh_dir("t0");
    write_config(dir, "scenario = linear\nb1 = 0.5\nT = 0\n");
    const CliResult res = run_cli("simulate --config " + (dir / "run.cfg").string() +
                                  " --out " + dir.string());
    REQUIRE(res.exit_code == 0);
    CHECK(slurp(dir / "density.csv") == "t,x,p\n0,0,1\n");
    fs::remove_all(dir);
}

TEST_CASE("identical config twice gives identical bytes", "[cli]") {
    const fs::path dir_a = fresh_dir("det_a");
    const fs::path dir_b = fresh_dir("det_b");
    const std::string cfg = config_path("parabolic.cfg");
    REQUIRE(run_cli("simulate --config " + cfg + " --out " + dir_a.string())
                .exit_code == 0);
    REQUIRE(run_cli("simulate --config " + cfg + " --out " + dir_b.string())
                .exit_code == 0);
    CHECK(slurp(dir_a / "density.csv") == slurp(dir_b / "density.csv"));
    CHECK(slurp(dir_a / "moments.csv") == slurp(dir_b / "moments.csv"));
    fs::remove_all(dir_a);
    fs::remove_all(dir_b);
}

namespace {

// parse "t,x,p" rows into (t, x) -> p
std::map<std::pair<int, int>, double> parse_density(const fs::path& path) {
    std::ifstream in(path);
    std::string line;
    std::getline(in, line);
    REQUIRE(line == "t,x,p");
    std::map<std::pair<int, int>, double> rows;
    while (std::getline(in, line)) {
        std::istringstream ss(line);
        int t = 0, x = 0;
        double p = 0.0;
        char comma = ',';
        ss >> t >> comma >> x >> comma >> p;
        REQUIRE(ss);
        rows[{t, x}] = p;
    }
    return rows;
}

} // namespace

TEST_CASE("engines agree on the density grid", "[cli]") {
    const fs::path dir = fresh_dir("engines");
    write_config(dir, "scenario = coefficients\ncoefficients = 0.6:0.8, 0.8:0.6\n"
                      "N = 11\nT = 4\n");
    std::map<std::pair<int, int>, double> reference;
    for (const std::string engine : {"sparse", "dense", "analytic"}) {
        const fs::path out = dir / engine;
        const CliResult res =
            run_cli("simulate --config " + (dir / "run.cfg").string() + " --out " +
                    out.string() + " --engine " + engine);
        INFO(engine << ": " << res.output);
        REQUIRE(res.exit_code == 0);
        const auto rows = parse_density(out / "density.csv");
        if (reference.empty()) {
            reference = rows;
            continue;
        }
        // same cone grid, values within float reassociation noise
        REQUIRE(rows.size() == reference.size());
        for (const auto& [key, p] : rows) {
            REQUIRE(reference.count(key) == 1);
            CHECK(std::abs(p - reference.at(key)) < 1e-12);
        }
    }
    fs::remove_all(dir);
}

TEST_CASE("design reports an exact roundtrip on the shipped target", "[cli]") {
    const fs::path dir = fresh_dir("design");
    const CliResult res = run_cli("design --config " + config_path("target.cfg") +
                                  " --out " + dir.string());
    INFO(res.output);
    REQUIRE(res.exit_code == 0);
    CHECK(res.output.find("max |delta|") != std::string::npos);
    const std::string program = slurp(dir / "program.csv");
    CHECK(program.rfind("k,A_k,B_k\n", 0) == 0);
    // geometric target: every pair is 1/sqrt(2)
    CHECK(program.find("1,0.70710678118654757,0.70710678118654757\n") !=
          std::string::npos);
    CHECK(slurp(dir / "roundtrip.csv").rfind("t,x,p_target,p_sim,delta\n", 0) == 0);
    fs::remove_all(dir);
}

TEST_CASE("compare passes clean and fails the corrupted-table control", "[cli]") {
    const std::string cfg = config_path("compare.cfg");
    const CliResult clean = run_cli("compare --config " + cfg);
    INFO(clean.output);
    CHECK(clean.exit_code == 0);
    CHECK(clean.output.find("sparse/dense") != std::string::npos);

    const CliResult corrupt = run_cli("compare --config " + cfg + " --corrupt-qtable");
    INFO(corrupt.output);
    CHECK(corrupt.exit_code == 1);
}

TEST_CASE("compare accepts a run that just touches the boundary", "[cli]") {
    const fs::path dir = fresh_dir("touch");
    write_config(dir, "scenario = linear\nb1 = 0.8660254037844386\nN = 9\nT = 4\n");
    const CliResult res = run_cli("compare --config " + (dir / "run.cfg").string());
    INFO(res.output);
    CHECK(res.exit_code == 0);
    // one more step would wrap the cone
    write_config(dir, "scenario = linear\nb1 = 0.8660254037844386\nN = 9\nT = 5\n");
    CHECK(run_cli("compare --config " + (dir / "run.cfg").string()).exit_code == 2);
    fs::remove_all(dir);
}

TEST_CASE("figures renders csv and svg outputs", "[cli]") {
    const fs::path dir = fresh_dir("figures");
    write_config(dir, "v_values = 0.5\nz_values = 0.5\nT = 10\n");
    const CliResult res = run_cli("figures --config " + (dir / "run.cfg").string() +
                                  " --out " + dir.string());
    INFO(res.output);
    REQUIRE(res.exit_code == 0);
    CHECK(fs::exists(dir / "fig3.csv"));
    CHECK(fs::exists(dir / "fig3.svg"));
    CHECK(fs::exists(dir / "fig4.csv"));
    CHECK(fs::exists(dir / "fig4_mean.svg"));
    CHECK(fs::exists(dir / "fig4_sigma.svg"));
    CHECK(slurp(dir / "fig3.csv").rfind("v,t,mean_sim,mean_theory\n", 0) == 0);
    const std::string svg = slurp(dir / "fig3.svg");
    CHECK(svg.find("stroke-dasharray") != std::string::npos); // simulated curve
    CHECK(svg.find("<circle") != std::string::npos);          // analytic points
    fs::remove_all(dir);
}

TEST_CASE("config errors exit 2", "[cli]") {
    const fs::path dir = fresh_dir("errors");

    CHECK(run_cli("simulate --config /no/such/file.cfg").exit_code == 2);

    write_config(dir, "scenario = linear\nb1 = 0.5\nT = 4\nunknown_key = 1\n");
    CHECK(run_cli("simulate --config " + (dir / "run.cfg").string()).exit_code == 2);

    // beyond the parabolic horizon: the message names the feasible maximum
    write_config(dir, "scenario = parabolic\nz = 0.5\nT = 9\n");
    const CliResult horizon =
        run_cli("simulate --config " + (dir / "run.cfg").string());
    CHECK(horizon.exit_code == 2);
    CHECK(horizon.output.find("T=5") != std::string::npos);

    // dense engine past the site cap
    write_config(dir, "scenario = linear\nb1 = 0.5\nT = 7\nN = 17\nengine = dense\n");
    CHECK(run_cli("simulate --config " + (dir / "run.cfg").string()).exit_code == 2);

    // compare beyond the dense-reference lattice cap
    write_config(dir, "scenario = linear\nb1 = 0.5\nT = 6\n");
    const CliResult cap = run_cli("compare --config " + (dir / "run.cfg").string());
    CHECK(cap.exit_code == 2);

    // empty figure grids
    write_config(dir, "T = 5\n");
    CHECK(run_cli("figures --config " + (dir / "run.cfg").string()).exit_code == 2);

    CHECK(run_cli("simulate").exit_code == 2);      // missing --config
    CHECK(run_cli("frobnicate").exit_code == 2);    // unknown subcommand
    CHECK(run_cli("").exit_code == 2);              // no subcommand
    fs::remove_all(dir);
}

TEST_CASE("infeasible design target exits 2 naming the index", "[cli]") {
    const fs::path dir = fresh_dir("infeasible");
    write_config(dir, "scenario = target\nf = 0.7, 0.2, 0.3\n");
    const CliResult res = run_cli("design --config " + (dir / "run.cfg").string());
    CHECK(res.exit_code == 2);
    CHECK(res.output.find("index 2") != std::string::npos);
    fs::remove_all(dir);
}
