#include "qif/interferometer.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qif/errors.hpp"

namespace qif {

std::string_view to_string(Port port) { return port == Port::C ? "C" : "D"; }
std::string_view to_string(Path path) { return path == Path::A ? "A" : "B"; }

BeamSplitterCoeffs::BeamSplitterCoeffs(double t) : t_(t), r_(0.0) {
    if (!(t >= 0.0 && t <= 1.0)) throw RangeError("transmission t must lie in [0, 1], got " + std::to_string(t));
    r_ = std::sqrt(1.0 - t * t);
}

TwoPathState split(const MomentumWavefunction& input, const BeamSplitterCoeffs& bs) {
    return {scaled(bs.t(), input), scaled(Complex(0.0, bs.r()), input)};
}

TwoPathState apply_kick(const TwoPathState& state, double delta, const PhaseSetting& phase) {
    return {state.path_a, scaled(std::polar(1.0, phase.alpha()), shift(state.path_b, delta))};
}

ExitPorts recombine(const TwoPathState& state) {
    const double h = std::numbers::sqrt2 / 2.0;
    // C = (A + iB)/sqrt2;  D = -i (iA + B)/sqrt2 = (A - iB)/sqrt2
    return {superpose(h, state.path_a, Complex(0.0, h), state.path_b),
            superpose(h, state.path_a, Complex(0.0, -h), state.path_b)};
}

PortOutcome port_stats(const MomentumWavefunction& raw, Port port) {
    PortOutcome out;
    out.port = port;
    out.probability = norm(raw);
    out.weighted_mean = first_moment(raw);
    if (out.probability >= kDarkPortThreshold) {
        out.wavefunction = scaled(1.0 / std::sqrt(out.probability), raw);
        out.mean_p = out.weighted_mean / out.probability;
    }
    return out;
}

double conservation_residual(const PortOutcome& out_c, const PortOutcome& out_d, double t, double delta,
                             double mean_in) {
    const double r2 = 1.0 - t * t;
    const double expected = t * t * mean_in + r2 * (mean_in + delta);
    return std::abs(out_c.weighted_mean + out_d.weighted_mean - expected);
}

MziOutcome run_mzi(const MomentumWavefunction& input, double t, double delta, const PhaseSetting& phase) {
    const ExitPorts ports = recombine(apply_kick(split(input, BeamSplitterCoeffs(t)), delta, phase));
    return {port_stats(ports.raw_c, Port::C), port_stats(ports.raw_d, Port::D)};
}

}  // namespace qif
