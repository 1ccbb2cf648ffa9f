// qif: interferometer simulations, sweeps and checks from the command line.

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "qif/commands.hpp"
#include "qif/errors.hpp"

namespace {

struct GridFlags {
    std::optional<std::size_t> n;
    std::optional<double> p_min;
    std::optional<double> p_max;

    void attach(CLI::App* cmd) {
        cmd->add_option("--grid-n", n, "Momentum grid size (power of two; default 4096 or $QIF_GRID_N)");
        cmd->add_option("--p-min", p_min, "Lower momentum bound in units of W (default -16)");
        cmd->add_option("--p-max", p_max, "Upper momentum bound in units of W (default 16)");
    }

    qif::GridSpec resolve() const {
        qif::GridSpec grid = qif::default_grid_from_env();
        if (n) grid.n_points = *n;
        if (p_min) grid.p_min = *p_min;
        if (p_max) grid.p_max = *p_max;
        grid.validate();
        return grid;
    }
};

void add_axis(CLI::App* cmd, const std::string& name, qif::cli::AxisRange& axis) {
    cmd->add_option("--" + name + "-min", axis.lo, "Lowest " + name)->capture_default_str();
    cmd->add_option("--" + name + "-max", axis.hi, "Highest " + name)->capture_default_str();
    cmd->add_option("--" + name + "-steps", axis.steps, "Number of " + name + " values")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantum interference of force: interferometer simulator"};
    app.require_subcommand(1);

    GridFlags grid_flags;
    int status = qif::cli::kExitOk;

    auto* simulate = app.add_subcommand("simulate", "Run a .qif experiment description");
    std::string program_path;
    simulate->add_option("file", program_path, "Path to the .qif file")->required();
    grid_flags.attach(simulate);

    auto* sweep = app.add_subcommand("sweep", "Sweep (t, delta) and write port statistics as CSV");
    qif::cli::SweepSpec sweep_spec;
    std::string sweep_out;
    std::string backend = "oracle";
    add_axis(sweep, "t", sweep_spec.t);
    add_axis(sweep, "delta", sweep_spec.delta);
    sweep->add_option("--alpha", sweep_spec.alpha, "Interferometer phase alpha (radians)")->capture_default_str();
    sweep->add_option("--backend", backend, "oracle or grid")
        ->check(CLI::IsMember({"oracle", "grid"}))
        ->capture_default_str();
    sweep->add_option("-o,--out", sweep_out, "CSV output path")->required();
    grid_flags.attach(sweep);

    auto* oracle = app.add_subcommand("oracle-check", "Compare the grid pipeline with closed forms");
    int samples = 1000;
    std::uint64_t seed = 0;
    oracle->add_option("--samples", samples, "Number of random (t, delta, alpha) triples")->capture_default_str();
    oracle->add_option("--seed", seed, "RNG seed")->required();
    grid_flags.attach(oracle);

    auto* propagate = app.add_subcommand("propagate", "Kick a Gaussian with a uniform-force pulse");
    qif::ImpulsePulse pulse{1.0, 0.2, 200};
    double mass = 1e4;
    propagate->add_option("--force", pulse.force, "Force F (natural units)")->capture_default_str();
    propagate->add_option("--tau", pulse.duration, "Pulse duration")->capture_default_str();
    propagate->add_option("--substeps", pulse.substeps, "Strang steps")->capture_default_str();
    propagate->add_option("--mass", mass, "Particle mass (natural units)")->capture_default_str();
    grid_flags.attach(propagate);

    auto* feasibility = app.add_subcommand("feasibility", "Electron interferometer estimates in SI units");
    qif::ElectronScenario scenario;
    double feas_t = 0.73;
    double feas_alpha = 0.0;
    feasibility->add_option("--energy-ev", scenario.kinetic_energy_ev, "Beam kinetic energy (eV)")
        ->capture_default_str();
    feasibility->add_option("--slit", scenario.slit_width, "Slit width (m)")->capture_default_str();
    feasibility->add_option("--drift", scenario.drift_distance, "Drift distance (m)")->capture_default_str();
    feasibility->add_option("--plate-separation", scenario.plate_separation, "Capacitor gap (m)")
        ->capture_default_str();
    feasibility->add_option("--plate-length", scenario.plate_length, "Capacitor length (m)")->capture_default_str();
    feasibility->add_option("--voltage", scenario.voltage, "Capacitor voltage (V)")->capture_default_str();
    feasibility->add_option("--t", feas_t, "BS1 transmission for the prediction")->capture_default_str();
    feasibility->add_option("--alpha", feas_alpha, "Phase for the prediction")->capture_default_str();

    auto* bec = app.add_subcommand("bec", "Internal-state protocol with Stern-Gerlach kicks");
    double bec_t = 0.85;
    double delta_a = 0.1;
    double delta_b = 0.3;
    bec->add_option("--t", bec_t, "First pulse coefficient")->capture_default_str();
    bec->add_option("--delta-a", delta_a, "Kick on |A>")->capture_default_str();
    bec->add_option("--delta-b", delta_b, "Kick on |B>")->capture_default_str();
    grid_flags.attach(bec);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*simulate) {
            status = qif::cli::cmd_simulate(program_path, grid_flags.resolve(), std::cout, std::cerr);
        } else if (*sweep) {
            sweep_spec.backend = backend == "grid" ? qif::cli::Backend::Grid : qif::cli::Backend::Oracle;
            sweep_spec.grid = grid_flags.resolve();
            status = qif::cli::cmd_sweep(sweep_spec, sweep_out, std::cout, std::cerr);
        } else if (*oracle) {
            status = qif::cli::cmd_oracle_check(samples, seed, grid_flags.resolve(), std::cout, std::cerr);
        } else if (*propagate) {
            status = qif::cli::cmd_propagate(pulse, mass, grid_flags.resolve(), std::cout, std::cerr);
        } else if (*feasibility) {
            status = qif::cli::cmd_feasibility(scenario, feas_t, feas_alpha, std::cout, std::cerr);
        } else if (*bec) {
            status = qif::cli::cmd_bec(bec_t, delta_a, delta_b, grid_flags.resolve(), std::cout, std::cerr);
        }
    } catch (const qif::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        status = qif::cli::kExitRuntimeError;
    }
    return status;
}
