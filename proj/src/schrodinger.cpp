#include "qif/schrodinger.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "qif/errors.hpp"

namespace qif {
namespace {

constexpr double kLeakTolerance = 1e-6;

void require_mass(const PropagationConfig& config) {
    if (!(config.mass > 0.0) || !std::isfinite(config.mass)) throw RangeError("mass must be positive");
}

// Fraction of the probability held by the outer n/16 nodes at each end.
double edge_fraction(std::span<const Complex> amps) {
    const std::size_t band = std::max<std::size_t>(1, amps.size() / 16);
    double edge = 0.0;
    double total = 0.0;
    for (std::size_t i = 0; i < amps.size(); ++i) {
        const double w = std::norm(amps[i]);
        total += w;
        if (i < band || i >= amps.size() - band) edge += w;
    }
    return total > 0.0 ? edge / total : 0.0;
}

void check_leak(std::span<const Complex> amps, const char* window) {
    const double frac = edge_fraction(amps);
    if (frac > kLeakTolerance)
        throw BoundaryLeakageError(std::string("wavepacket reached the edge of the ") + window + " window (" +
                                   std::to_string(frac) + " of the probability in the edge band)");
}

}  // namespace

PositionWavefunction free_propagate(const PositionWavefunction& wf, double time, const PropagationConfig& config) {
    require_mass(config);
    if (time == 0.0) return wf;
    const MomentumWavefunction mom = to_momentum(wf);
    const GridSpec& g = mom.grid();
    std::vector<Complex> amps(mom.amplitudes().begin(), mom.amplitudes().end());
    for (std::size_t k = 0; k < amps.size(); ++k) {
        const double p = g.momentum(k);
        amps[k] *= std::polar(1.0, -p * p * time / (2.0 * config.mass));
    }
    return to_position(MomentumWavefunction(g, std::move(amps)));
}

PositionWavefunction evolve_uniform_force(const PositionWavefunction& wf, double force,
                                          const PropagationConfig& config) {
    require_mass(config);
    if (!(config.time_step > 0.0)) throw RangeError("time step must be positive");
    if (!(config.total_time >= 0.0)) throw RangeError("total time must be non-negative");
    if (config.total_time == 0.0) return wf;

    const auto steps = static_cast<std::size_t>(std::ceil(config.total_time / config.time_step - 1e-12));
    const double dt = config.total_time / static_cast<double>(steps);
    const GridSpec& g = wf.momentum_grid();
    const std::size_t n = g.n_points;

    std::vector<Complex> half_potential(n);
    std::vector<Complex> kinetic(n);
    for (std::size_t j = 0; j < n; ++j) half_potential[j] = std::polar(1.0, 0.5 * force * g.position(j) * dt);
    for (std::size_t k = 0; k < n; ++k) {
        const double p = g.momentum(k);
        kinetic[k] = std::polar(1.0, -p * p * dt / (2.0 * config.mass));
    }

    PositionWavefunction state = wf;
    std::vector<Complex> buf(n);
    for (std::size_t step = 0; step < steps; ++step) {
        for (std::size_t j = 0; j < n; ++j) buf[j] = state[j] * half_potential[j];
        MomentumWavefunction mom = to_momentum(PositionWavefunction(g, buf));
        check_leak(mom.amplitudes(), "momentum");
        for (std::size_t k = 0; k < n; ++k) buf[k] = mom[k] * kinetic[k];
        const PositionWavefunction pos = to_position(MomentumWavefunction(g, buf));
        for (std::size_t j = 0; j < n; ++j) buf[j] = pos[j] * half_potential[j];
        check_leak(buf, "position");
        state = PositionWavefunction(g, buf);
    }
    return state;
}

PositionWavefunction apply_impulse(const PositionWavefunction& wf, const ImpulsePulse& pulse,
                                   const PropagationConfig& config) {
    if (pulse.substeps < 1) throw RangeError("impulse needs at least one substep");
    if (!(pulse.duration >= 0.0)) throw RangeError("impulse duration must be non-negative");
    if (pulse.duration == 0.0) return wf;
    PropagationConfig steps = config;
    steps.total_time = pulse.duration;
    steps.time_step = pulse.duration / pulse.substeps;
    return evolve_uniform_force(wf, pulse.force, steps);
}

double kick_fidelity(const MomentumWavefunction& before, const MomentumWavefunction& after, double delta) {
    const double denom = std::sqrt(norm(before) * norm(after));
    if (denom < kZeroNormThreshold) throw ZeroNormError("fidelity of a zero-norm state");
    return std::abs(inner_product(shift(before, delta), after)) / denom;
}

PositionMoments position_moments(const PositionWavefunction& wf) {
    double total = 0.0;
    double first = 0.0;
    for (std::size_t j = 0; j < wf.size(); ++j) {
        const double w = std::norm(wf[j]);
        total += w;
        first += wf.position(j) * w;
    }
    if (total * wf.step() < kZeroNormThreshold) throw ZeroNormError("moments of a zero-norm state");
    const double mean = first / total;
    double second = 0.0;
    for (std::size_t j = 0; j < wf.size(); ++j) {
        const double d = wf.position(j) - mean;
        second += d * d * std::norm(wf[j]);
    }
    return {mean, std::sqrt(second / total)};
}

MziOutcome run_mzi_impulse(const MomentumWavefunction& input, double t, const ImpulsePulse& pulse,
                           const PropagationConfig& config, const PhaseSetting& phase) {
    const TwoPathState inside = split(input, BeamSplitterCoeffs(t));
    const MomentumWavefunction arm_a = to_momentum(free_propagate(to_position(inside.path_a), pulse.duration, config));
    const MomentumWavefunction arm_b = to_momentum(apply_impulse(to_position(inside.path_b), pulse, config));
    const ExitPorts ports = recombine({arm_a, scaled(std::polar(1.0, phase.alpha()), arm_b)});
    return {port_stats(ports.raw_c, Port::C), port_stats(ports.raw_d, Port::D)};
}

}  // namespace qif
