#include "qif/commands.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <limits>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>
#include <thread>

#include "qif/circuitfile.hpp"
#include "qif/errors.hpp"
#include "qif/schrodinger.hpp"

namespace qif::cli {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kUnitarityTolerance = 1e-9;
constexpr double kConservationTolerance = 1e-8;

std::string g(double v, int digits = 10) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", digits, v);
    return buf;
}

void check_range(const AxisRange& r, const char* axis) {
    if (r.steps < 2) throw RangeError(std::string(axis) + " range needs at least 2 steps");
    if (!std::isfinite(r.lo) || !std::isfinite(r.hi) || r.lo > r.hi)
        throw RangeError(std::string(axis) + " range must satisfy lo <= hi");
}

// Uniform double in [0, 1) from the top 53 bits.
double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1p-53; }

}  // namespace

double AxisRange::node(int i) const {
    if (steps < 2 || i <= 0) return lo;
    if (i >= steps - 1) return hi;
    return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(steps - 1);
}

SweepRow oracle_row(double t, double delta, double alpha) {
    const ClosedFormStats s = closed_form_stats({t, delta, alpha});
    const double r2 = 1.0 - t * t;
    return {t,
            delta,
            alpha,
            s.p_c,
            s.mean_c.value_or(kNaN),
            s.p_d,
            s.mean_d.value_or(kNaN),
            std::abs(s.weighted_mean_c + s.weighted_mean_d - r2 * delta)};
}

SweepRow grid_row(double t, double delta, double alpha, const GridSpec& grid) {
    const MziOutcome out = run_mzi(gaussian_init({1.0, 0.0}, grid), t, delta, PhaseSetting::from_alpha(alpha));
    return {t,
            delta,
            alpha,
            out.c.probability,
            out.c.mean_p.value_or(kNaN),
            out.d.probability,
            out.d.mean_p.value_or(kNaN),
            conservation_residual(out.c, out.d, t, delta, 0.0)};
}

std::vector<SweepRow> compute_sweep(const SweepSpec& spec) {
    check_range(spec.t, "t");
    check_range(spec.delta, "delta");
    if (spec.t.lo < 0.0 || spec.t.hi > 1.0) throw RangeError("t range must lie within [0, 1]");
    if (spec.backend == Backend::Grid) {
        spec.grid.validate();
        const double guard = spec.grid.span() / 4.0;
        if (std::abs(spec.delta.lo) >= guard || std::abs(spec.delta.hi) >= guard)
            throw RangeError("delta range exceeds the aliasing guard of the grid");
    }

    const std::size_t n_rows = static_cast<std::size_t>(spec.t.steps) * static_cast<std::size_t>(spec.delta.steps);
    std::vector<SweepRow> rows(n_rows);
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};

    const auto worker = [&] {
        try {
            for (std::size_t i = next++; i < n_rows && !failed; i = next++) {
                const double t = spec.t.node(static_cast<int>(i / static_cast<std::size_t>(spec.delta.steps)));
                const double delta = spec.delta.node(static_cast<int>(i % static_cast<std::size_t>(spec.delta.steps)));
                rows[i] = spec.backend == Backend::Oracle ? oracle_row(t, delta, spec.alpha)
                                                          : grid_row(t, delta, spec.alpha, spec.grid);
            }
        } catch (...) {
            if (!failed.exchange(true)) failure = std::current_exception();
        }
    };
    const unsigned n_threads = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(), 16u));
    {
        std::vector<std::jthread> pool;
        for (unsigned k = 1; k < n_threads; ++k) pool.emplace_back(worker);
        worker();
    }
    if (failure) std::rethrow_exception(failure);

    for (const SweepRow& row : rows) {
        if (std::abs(row.p_c + row.p_d - 1.0) > kUnitarityTolerance)
            throw Error("sweep row at t=" + g(row.t) + " delta=" + g(row.delta) + " violates P_C + P_D = 1");
        if (!(row.residual <= kConservationTolerance))
            throw Error("sweep row at t=" + g(row.t) + " delta=" + g(row.delta) + " violates momentum conservation");
    }
    return rows;
}

void write_sweep_csv(std::ostream& os, std::span<const SweepRow> rows) {
    os << "t,delta,alpha,p_c,mean_c,p_d,mean_d,residual\n";
    for (const SweepRow& r : rows)
        os << g(r.t, 17) << ',' << g(r.delta, 17) << ',' << g(r.alpha, 17) << ',' << g(r.p_c, 17) << ','
           << g(r.mean_c, 17) << ',' << g(r.p_d, 17) << ',' << g(r.mean_d, 17) << ',' << g(r.residual, 17) << '\n';
}

SweepMinimum sweep_minimum(std::span<const SweepRow> rows) {
    SweepMinimum best{kNaN, kNaN, std::numeric_limits<double>::infinity(), kNaN};
    for (const SweepRow& r : rows)
        if (r.mean_c < best.mean_c) best = {r.t, r.delta, r.mean_c, r.p_c};
    return best;
}

double OracleCheckReport::max_deviation() const {
    return std::max({max_dev_p_c, max_dev_mean_c, max_dev_p_d, max_dev_mean_d});
}

OracleCheckReport oracle_check(int samples, std::uint64_t seed, const GridSpec& grid) {
    OracleCheckReport report;
    report.samples = samples;
    if (samples <= 0) return report;
    const MomentumWavefunction input = gaussian_init({1.0, 0.0}, grid);
    std::mt19937_64 rng(seed);
    for (int i = 0; i < samples; ++i) {
        const double t = uniform01(rng);
        const double delta = 2.0 * uniform01(rng);
        const double alpha = 2.0 * std::numbers::pi * uniform01(rng);
        const MziOutcome out = run_mzi(input, t, delta, PhaseSetting::from_alpha(alpha));
        const ClosedFormStats ref = closed_form_stats({t, delta, alpha});
        report.max_dev_p_c = std::max(report.max_dev_p_c, std::abs(out.c.probability - ref.p_c));
        report.max_dev_p_d = std::max(report.max_dev_p_d, std::abs(out.d.probability - ref.p_d));
        if (out.c.mean_p && ref.mean_c)
            report.max_dev_mean_c = std::max(report.max_dev_mean_c, std::abs(*out.c.mean_p - *ref.mean_c));
        else
            ++report.dark_ports;
        if (out.d.mean_p && ref.mean_d)
            report.max_dev_mean_d = std::max(report.max_dev_mean_d, std::abs(*out.d.mean_p - *ref.mean_d));
        else
            ++report.dark_ports;
    }
    return report;
}

PropagationReport propagate_gaussian(const ImpulsePulse& pulse, double mass, const GridSpec& grid) {
    const MomentumWavefunction before = gaussian_init({1.0, 0.0}, grid);
    PropagationConfig config;
    config.mass = mass;
    const MomentumWavefunction after = to_momentum(apply_impulse(to_position(before), pulse, config));
    PropagationReport r;
    r.kick = pulse.kick();
    r.mean_shift = mean_momentum(after) - mean_momentum(before);
    r.fidelity = kick_fidelity(before, after, pulse.kick());
    r.norm_drift = std::abs(norm(after) - norm(before));
    r.dispersion_times = pulse.duration / mass;
    return r;
}

BecReport bec_gaussian(double t, double delta_a, double delta_b, const GridSpec& grid) {
    const MomentumWavefunction input = gaussian_init({1.0, 0.0}, grid);
    const SpinorWavefunction final_state = run_protocol_state(input, t, delta_a, delta_b);
    const ExitPorts mzi =
        recombine(apply_kick(split(input, BeamSplitterCoeffs(t)), delta_b - delta_a, PhaseSetting{}));
    BecReport r;
    r.outcome = select_internal(final_state, InternalState::A);
    r.oracle = closed_form_stats({t, delta_b - delta_a, 0.0});
    r.max_nodewise_diff = max_abs_difference(final_state.comp_a, mzi.raw_c);
    r.norm_before_selection = final_state.total_norm();
    return r;
}

int cmd_simulate(const std::string& path, const GridSpec& grid, std::ostream& out, std::ostream& err) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        err << "error: cannot open '" << path << "'\n";
        return kExitRuntimeError;
    }
    std::ostringstream text;
    text << in.rdbuf();
    circuit::CircuitProgram program;
    try {
        program = circuit::parse(text.str());
    } catch (const circuit::ParseError& e) {
        err << path << ':' << e.line() << ':' << e.column() << ": error: " << e.message() << '\n';
        return kExitParseError;
    }
    try {
        out << circuit::execute(program, grid).text;
    } catch (const Error& e) {
        err << path << ": runtime error: " << e.what() << '\n';
        return kExitRuntimeError;
    }
    return kExitOk;
}

int cmd_sweep(const SweepSpec& spec, const std::string& out_path, std::ostream& out, std::ostream& err) {
    std::vector<SweepRow> rows;
    try {
        rows = compute_sweep(spec);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitRuntimeError;
    }
    std::ofstream file(out_path, std::ios::binary);
    if (!file) {
        err << "error: cannot write '" << out_path << "'\n";
        return kExitRuntimeError;
    }
    write_sweep_csv(file, rows);
    file.close();
    if (!file) {
        err << "error: failed writing '" << out_path << "'\n";
        return kExitRuntimeError;
    }
    const SweepMinimum m = sweep_minimum(rows);
    out << "rows: " << rows.size() << '\n'
        << "min mean_c: " << g(m.mean_c) << " at t=" << g(m.t) << " delta=" << g(m.delta) << " (p_c=" << g(m.p_c)
        << ")\n"
        << "wrote " << out_path << '\n';
    return kExitOk;
}

int cmd_oracle_check(int samples, std::uint64_t seed, const GridSpec& grid, std::ostream& out, std::ostream& err) {
    try {
        const OracleCheckReport r = oracle_check(samples, seed, grid);
        out << "samples: " << r.samples << '\n';
        if (r.samples <= 0) return kExitOk;
        out << "grid: n=" << grid.n_points << " p in [" << g(grid.p_min) << ", " << g(grid.p_max) << ")\n"
            << "max |dP_C|: " << g(r.max_dev_p_c, 3) << '\n'
            << "max |d<p>_C|: " << g(r.max_dev_mean_c, 3) << '\n'
            << "max |dP_D|: " << g(r.max_dev_p_d, 3) << '\n'
            << "max |d<p>_D|: " << g(r.max_dev_mean_d, 3) << '\n'
            << "dark ports skipped: " << r.dark_ports << '\n'
            << "max deviation: " << g(r.max_deviation(), 3) << '\n';
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitRuntimeError;
    }
    return kExitOk;
}

int cmd_propagate(const ImpulsePulse& pulse, double mass, const GridSpec& grid, std::ostream& out,
                  std::ostream& err) {
    try {
        const PropagationReport r = propagate_gaussian(pulse, mass, grid);
        out << "force: " << g(pulse.force) << " duration: " << g(pulse.duration) << " substeps: " << pulse.substeps
            << " mass: " << g(mass) << '\n'
            << "dispersion times: " << g(r.dispersion_times) << '\n'
            << "intended kick: " << g(r.kick, 15) << '\n'
            << "mean shift: " << g(r.mean_shift, 15) << '\n'
            << "kick fidelity: " << g(r.fidelity, 12) << '\n'
            << "norm drift: " << g(r.norm_drift, 3) << '\n';
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitRuntimeError;
    }
    return kExitOk;
}

int cmd_feasibility(const ElectronScenario& scenario, double t, double alpha, std::ostream& out,
                    std::ostream& err) {
    try {
        const FeasibilityReport r = electron_report(scenario);
        const ClosedFormStats s = closed_form_stats(ratio_to_mzi_params(r, t, alpha));
        out << "kinetic energy: " << g(scenario.kinetic_energy_ev) << " eV\n"
            << "speed: " << g(r.speed) << " m/s\n"
            << "momentum: " << g(r.momentum) << " kg m/s\n"
            << "time of flight: " << g(r.time_of_flight) << " s over " << g(scenario.drift_distance) << " m\n"
            << "initial width (slit/2): " << g(r.initial_width * 1e6) << " um\n"
            << "beam width after drift: " << g(r.beam_width_at_drift * 1e6) << " um\n"
            << "momentum width W: " << g(r.momentum_width) << " kg m/s\n"
            << "kick delta: " << g(r.kick) << " kg m/s\n"
            << "delta/W: " << g(r.ratio) << '\n'
            << "predicted at t=" << g(t) << " alpha=" << g(alpha) << ": P_C=" << g(s.p_c) << " <p>_C="
            << (s.mean_c ? g(*s.mean_c) : std::string("undefined")) << " W\n"
            << "path separation (100 nm grating, " << g(kGratingSeparationDistance) << " m): "
            << g(kGratingPathSeparation * 1e6) << " um (informational)\n";
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitRuntimeError;
    }
    return kExitOk;
}

int cmd_bec(double t, double delta_a, double delta_b, const GridSpec& grid, std::ostream& out, std::ostream& err) {
    try {
        const BecReport r = bec_gaussian(t, delta_a, delta_b, grid);
        out << "t: " << g(t) << " delta_a: " << g(delta_a) << " delta_b: " << g(delta_b)
            << " effective delta: " << g(delta_b - delta_a) << '\n'
            << "norm before selection: " << g(r.norm_before_selection, 15) << '\n'
            << "P(A): " << g(r.outcome.probability) << '\n'
            << "<p> after selecting A: "
            << (r.outcome.mean_p ? g(*r.outcome.mean_p) : std::string("undefined (dark)")) << '\n'
            << "oracle P_C: " << g(r.oracle.p_c) << " <p>_C: "
            << (r.oracle.mean_c ? g(*r.oracle.mean_c) : std::string("undefined")) << '\n'
            << "max nodewise diff vs MZI port C: " << g(r.max_nodewise_diff, 3) << '\n';
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitRuntimeError;
    }
    return kExitOk;
}

}  // namespace qif::cli
