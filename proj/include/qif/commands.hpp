#pragma once

// Implementation of the `qif` command-line subcommands. Each cmd_* function
// writes its report to `out`, diagnostics to `err`, and returns the process
// exit status.

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "qif/bec.hpp"
#include "qif/feasibility.hpp"
#include "qif/gaussian_oracle.hpp"
#include "qif/interferometer.hpp"
#include "qif/schrodinger.hpp"
#include "qif/wavepacket.hpp"

namespace qif::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitParseError = 2;
inline constexpr int kExitRuntimeError = 3;

struct AxisRange {
    double lo = 0.0;
    double hi = 0.0;
    int steps = 2;

    double node(int i) const;
};

enum class Backend { Oracle, Grid };

struct SweepSpec {
    AxisRange t{0.01, 0.99, 200};
    AxisRange delta{0.01, 2.0, 200};
    double alpha = 0.0;
    Backend backend = Backend::Oracle;
    GridSpec grid = default_grid();
};

// Means are NaN for a dark port.
struct SweepRow {
    double t = 0.0;
    double delta = 0.0;
    double alpha = 0.0;
    double p_c = 0.0;
    double mean_c = 0.0;
    double p_d = 0.0;
    double mean_d = 0.0;
    double residual = 0.0;
};

SweepRow oracle_row(double t, double delta, double alpha);
SweepRow grid_row(double t, double delta, double alpha, const GridSpec& grid);

// t-major rows; computed in parallel, collected in order. Every row is
// checked for P_C + P_D = 1 (1e-9) and the conservation residual (1e-8);
// a violation throws Error. Throws RangeError for invalid axes.
std::vector<SweepRow> compute_sweep(const SweepSpec& spec);

void write_sweep_csv(std::ostream& os, std::span<const SweepRow> rows);

struct SweepMinimum {
    double t = 0.0;
    double delta = 0.0;
    double mean_c = 0.0;
    double p_c = 0.0;
};

SweepMinimum sweep_minimum(std::span<const SweepRow> rows);

struct OracleCheckReport {
    int samples = 0;
    int dark_ports = 0;
    double max_dev_p_c = 0.0;
    double max_dev_mean_c = 0.0;
    double max_dev_p_d = 0.0;
    double max_dev_mean_d = 0.0;

    double max_deviation() const;
};

// Random (t, delta <= 2W, alpha) triples, grid pipeline against closed forms.
OracleCheckReport oracle_check(int samples, std::uint64_t seed, const GridSpec& grid);

struct PropagationReport {
    double kick = 0.0;
    double mean_shift = 0.0;
    double fidelity = 0.0;
    double norm_drift = 0.0;
    double dispersion_times = 0.0;  // tau / (m / W^2)
};

PropagationReport propagate_gaussian(const ImpulsePulse& pulse, double mass, const GridSpec& grid);

struct BecReport {
    PortOutcome outcome;
    ClosedFormStats oracle;
    double max_nodewise_diff = 0.0;  // against MZI port C at delta_b - delta_a
    double norm_before_selection = 0.0;
};

BecReport bec_gaussian(double t, double delta_a, double delta_b, const GridSpec& grid);

int cmd_simulate(const std::string& path, const GridSpec& grid, std::ostream& out, std::ostream& err);
int cmd_sweep(const SweepSpec& spec, const std::string& out_path, std::ostream& out, std::ostream& err);
int cmd_oracle_check(int samples, std::uint64_t seed, const GridSpec& grid, std::ostream& out, std::ostream& err);
int cmd_propagate(const ImpulsePulse& pulse, double mass, const GridSpec& grid, std::ostream& out,
                  std::ostream& err);
int cmd_feasibility(const ElectronScenario& scenario, double t, double alpha, std::ostream& out, std::ostream& err);
int cmd_bec(double t, double delta_a, double delta_b, const GridSpec& grid, std::ostream& out, std::ostream& err);

}  // namespace qif::cli
