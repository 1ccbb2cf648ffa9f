#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

#include "qif/commands.hpp"
#include "qif/errors.hpp"

using namespace qif;
using namespace qif::cli;

namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
    const fs::path dir = fs::temp_directory_path() / ("qif_test_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    return dir;
}

fs::path write_file(const std::string& name, const std::string& text) {
    const fs::path path = scratch_dir() / name;
    std::ofstream(path, std::ios::binary) << text;
    return path;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct RunResult {
    int status;
    std::string output;
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(QIF_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = ::popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string output;
    char buf[4096];
    while (const std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) output.append(buf, n);
    const int raw = ::pclose(pipe);
    return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, output};
}

constexpr const char* kCanonical =
    "source width=1 mean=0\nbs t=0.85\nkick path=B delta=0.2\nphase path=B alpha=0\n"
    "recombine\nselect port=C\nreport moments\n";

}  // namespace

TEST_CASE("AxisRange nodes include both endpoints") {
    const AxisRange a{0.01, 0.99, 200};
    CHECK(a.node(0) == 0.01);
    CHECK(a.node(199) == 0.99);
    CHECK(AxisRange{2.0, 2.0, 1}.node(0) == 2.0);
}

TEST_CASE("oracle_row and grid_row") {
    const SweepRow o = oracle_row(0.85, 0.2, 0.0);
    CHECK(std::abs(o.p_c - 0.05669005452584719) < 1e-15);
    CHECK(std::abs(o.mean_c - (-0.2924850696669441)) < 1e-13);
    CHECK(std::abs(o.p_c + o.p_d - 1.0) < 1e-15);
    const SweepRow g = grid_row(0.85, 0.2, 0.0, default_grid());
    CHECK(std::abs(g.p_c - o.p_c) < 1e-10);
    CHECK(std::abs(g.mean_c - o.mean_c) < 1e-9);
    CHECK(g.residual < 1e-8);

    const SweepRow dark = oracle_row(std::numbers::sqrt2 / 2, 0.0, 0.0);
    CHECK(std::isnan(dark.mean_c));
    CHECK_FALSE(std::isnan(dark.mean_d));
}

TEST_CASE("sweep rows are ordered, valid and deterministic") {
    SweepSpec spec;
    spec.t = {0.1, 0.9, 17};
    spec.delta = {0.05, 1.5, 13};
    const auto rows = compute_sweep(spec);
    REQUIRE(rows.size() == 17 * 13);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].t == spec.t.node(static_cast<int>(i / 13)));
        CHECK(rows[i].delta == spec.delta.node(static_cast<int>(i % 13)));
        CHECK(std::abs(rows[i].p_c + rows[i].p_d - 1.0) < 1e-9);
        CHECK(rows[i].residual <= 1e-12);
    }
    std::ostringstream a, b;
    write_sweep_csv(a, rows);
    write_sweep_csv(b, compute_sweep(spec));
    const std::string csv = a.str();
    CHECK(csv == b.str());
    CHECK(csv.starts_with("t,delta,alpha,p_c,mean_c,p_d,mean_d,residual\n"));
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 17 * 13);
}

TEST_CASE("CSV values survive a text round trip") {
    const SweepRow row = oracle_row(0.73, 0.0992, 0.3);
    std::ostringstream os;
    write_sweep_csv(os, std::span(&row, 1));
    std::istringstream is(os.str());
    std::string header, line;
    std::getline(is, header);
    std::getline(is, line);
    std::vector<double> fields;
    std::stringstream ls(line);
    for (std::string cell; std::getline(ls, cell, ',');) fields.push_back(std::stod(cell));
    REQUIRE(fields.size() == 8);
    CHECK(fields[0] == row.t);
    CHECK(fields[3] == row.p_c);
    CHECK(fields[4] == row.mean_c);
    CHECK(fields[7] == row.residual);
}

TEST_CASE("oracle and grid backends agree") {
    SweepSpec spec;
    spec.t = {0.01, 0.99, 20};
    spec.delta = {0.01, 2.0, 20};
    const auto oracle_rows = compute_sweep(spec);
    spec.backend = Backend::Grid;
    const auto grid_rows = compute_sweep(spec);
    REQUIRE(oracle_rows.size() == grid_rows.size());
    for (std::size_t i = 0; i < grid_rows.size(); ++i) {
        CHECK(std::abs(grid_rows[i].p_c - oracle_rows[i].p_c) < 1e-6);
        CHECK(std::abs(grid_rows[i].p_d - oracle_rows[i].p_d) < 1e-6);
        if (oracle_rows[i].p_c > 1e-6) CHECK(std::abs(grid_rows[i].mean_c - oracle_rows[i].mean_c) < 1e-6);
        CHECK(std::abs(grid_rows[i].mean_d - oracle_rows[i].mean_d) < 1e-6);
    }
}

TEST_CASE("sweep minimum") {
    const auto rows = compute_sweep(SweepSpec{});
    const SweepMinimum m = sweep_minimum(rows);
    CHECK(m.mean_c <= -0.65);
    CHECK(m.delta == doctest::Approx(0.01));

    SweepSpec bad;
    bad.t = {0.5, 1.2, 3};
    CHECK_THROWS_AS(compute_sweep(bad), RangeError);
}

TEST_CASE("oracle_check") {
    CHECK(oracle_check(0, 1, default_grid()).samples == 0);
    const OracleCheckReport r = oracle_check(50, 99, default_grid());
    CHECK(r.samples == 50);
    CHECK(r.max_deviation() < 1e-6);
    const OracleCheckReport again = oracle_check(50, 99, default_grid());
    CHECK(again.max_deviation() == r.max_deviation());
}

TEST_CASE("propagate_gaussian") {
    const PropagationReport r = propagate_gaussian({20.0, 0.01, 100}, 1.0, default_grid());
    CHECK(r.kick == doctest::Approx(0.2));
    CHECK(std::abs(r.mean_shift - 0.2) < 1e-9);
    CHECK(r.fidelity >= 0.999);
    CHECK(r.norm_drift < 1e-9);
    CHECK(r.dispersion_times == doctest::Approx(0.01));
}

TEST_CASE("bec_gaussian") {
    const BecReport r = bec_gaussian(0.85, 0.1, 0.3, default_grid());
    CHECK(r.max_nodewise_diff < 1e-10);
    CHECK(std::abs(r.norm_before_selection - 1.0) < 1e-9);
    CHECK(std::abs(r.outcome.probability - r.oracle.p_c) < 1e-10);
}

TEST_CASE("cmd_simulate exit codes and output") {
    std::ostringstream out, err;
    SUBCASE("ok") {
        CHECK(cmd_simulate(write_file("ok.qif", kCanonical).string(), default_grid(), out, err) == kExitOk);
        CHECK(out.str().find("report moments port=C") != std::string::npos);
        CHECK(err.str().empty());
    }
    SUBCASE("parse error") {
        const fs::path p = write_file("bad.qif", "source width=1 mean=0\nbs t=0.85\nkick path=Q delta=0.2\n");
        CHECK(cmd_simulate(p.string(), default_grid(), out, err) == kExitParseError);
        CHECK(err.str() == p.string() + ":3:11: error: path must be A or B\n");
    }
    SUBCASE("missing file") {
        CHECK(cmd_simulate((scratch_dir() / "absent.qif").string(), default_grid(), out, err) == kExitRuntimeError);
    }
    SUBCASE("runtime error") {
        const fs::path p = write_file("dark.qif", "source width=1 mean=0\nbs t=0.7071067811865476\nrecombine\n"
                                                  "select port=C\nreport moments\n");
        CHECK(cmd_simulate(p.string(), default_grid(), out, err) == kExitRuntimeError);
        CHECK(err.str().find("line 5") != std::string::npos);
    }
}

TEST_CASE("cmd_feasibility scales with the voltage") {
    std::ostringstream a, b, err;
    ElectronScenario s;
    REQUIRE(cmd_feasibility(s, 0.73, 0.0, a, err) == kExitOk);
    s.voltage *= 2.0;
    REQUIRE(cmd_feasibility(s, 0.73, 0.0, b, err) == kExitOk);
    const auto ratio_of = [](const std::string& text) {
        const std::size_t at = text.find("delta/W: ");
        REQUIRE(at != std::string::npos);
        return std::stod(text.substr(at + 9));
    };
    CHECK(ratio_of(b.str()) == doctest::Approx(2.0 * ratio_of(a.str())).epsilon(1e-9));
    s.kinetic_energy_ev = -1.0;
    std::ostringstream c;
    CHECK(cmd_feasibility(s, 0.73, 0.0, c, err) == kExitRuntimeError);
}

TEST_CASE("command-line binary") {
    SUBCASE("simulate") {
        const RunResult ok = run_cli("simulate " + write_file("cli_ok.qif", kCanonical).string());
        CHECK(ok.status == 0);
        CHECK(ok.output.find("port=C") != std::string::npos);
        const RunResult bad =
            run_cli("simulate " + write_file("cli_bad.qif", "source width=1 mean=0\nbogus\n").string());
        CHECK(bad.status == 2);
        CHECK(bad.output.find(":2:1: error: unknown instruction") != std::string::npos);
        CHECK(run_cli("simulate " + (scratch_dir() / "nope.qif").string()).status == 3);
    }
    SUBCASE("sweep writes the CSV") {
        const fs::path csv = scratch_dir() / "sweep.csv";
        const RunResult r = run_cli("sweep --t-steps 5 --delta-steps 4 -o " + csv.string());
        CHECK(r.status == 0);
        const std::string text = slurp(csv);
        CHECK(std::count(text.begin(), text.end(), '\n') == 21);
    }
    SUBCASE("oracle-check") {
        const RunResult r = run_cli("oracle-check --samples 0 --seed 1");
        CHECK(r.status == 0);
        CHECK(r.output.find("samples: 0") != std::string::npos);
    }
    SUBCASE("bec") {
        const RunResult r = run_cli("bec");
        CHECK(r.status == 0);
        CHECK(r.output.find("max nodewise diff vs MZI port C") != std::string::npos);
    }
}
