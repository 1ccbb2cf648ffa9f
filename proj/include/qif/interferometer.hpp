#pragma once

// Two-path Mach-Zehnder pipeline in momentum space.
//
//   BS1: reflection i*r, transmission t (r = sqrt(1 - t^2))
//   arm B: rigid kick p -> p + delta and phase exp(i*alpha), alpha = beta + gamma
//   BS2: balanced, reflection i/sqrt(2), transmission 1/sqrt(2)
//
// With this convention the exit ports carry
//   C = (t Phi(p) - r e^{i alpha} Phi(p - delta)) / sqrt(2)
//   D = (t Phi(p) + r e^{i alpha} Phi(p - delta)) / sqrt(2)
// where the unobservable global factor i on D has been dropped.

#include <optional>
#include <string_view>

#include "qif/wavepacket.hpp"

namespace qif {

enum class Port { C, D };
enum class Path { A, B };

std::string_view to_string(Port port);
std::string_view to_string(Path path);

// Below this exit probability a port is dark and its mean is undefined.
inline constexpr double kDarkPortThreshold = 1e-15;

class BeamSplitterCoeffs {
public:
    // Throws RangeError unless t is in [0, 1].
    explicit BeamSplitterCoeffs(double t);

    double t() const { return t_; }
    double r() const { return r_; }

private:
    double t_;
    double r_;
};

struct TwoPathState {
    MomentumWavefunction path_a;
    MomentumWavefunction path_b;

    const MomentumWavefunction& path(Path p) const { return p == Path::A ? path_a : path_b; }
    double total_norm() const { return norm(path_a) + norm(path_b); }
};

// beta and gamma are kept for bookkeeping only; the dynamics see alpha.
struct PhaseSetting {
    double beta = 0.0;
    double gamma = 0.0;

    double alpha() const { return beta + gamma; }
    static PhaseSetting from_alpha(double alpha) { return {alpha, 0.0}; }
};

struct PortOutcome {
    Port port = Port::C;
    double probability = 0.0;
    // Integral of p |raw_j|^2, i.e. P_j <p>_j. Defined for dark ports too.
    double weighted_mean = 0.0;
    // Empty when the port is dark.
    std::optional<MomentumWavefunction> wavefunction;
    std::optional<double> mean_p;

    bool dark() const { return !mean_p.has_value(); }
};

struct ExitPorts {
    MomentumWavefunction raw_c;
    MomentumWavefunction raw_d;

    const MomentumWavefunction& raw(Port p) const { return p == Port::C ? raw_c : raw_d; }
};

struct MziOutcome {
    PortOutcome c;
    PortOutcome d;
};

TwoPathState split(const MomentumWavefunction& input, const BeamSplitterCoeffs& bs);

// Shifts arm B by delta and multiplies it by exp(i alpha); arm A is untouched.
TwoPathState apply_kick(const TwoPathState& state, double delta, const PhaseSetting& phase);

ExitPorts recombine(const TwoPathState& state);

PortOutcome port_stats(const MomentumWavefunction& raw, Port port);

// |P_C<p>_C + P_D<p>_D - (t^2 mean_in + r^2 (mean_in + delta))|
double conservation_residual(const PortOutcome& out_c, const PortOutcome& out_d, double t, double delta,
                             double mean_in);

MziOutcome run_mzi(const MomentumWavefunction& input, double t, double delta, const PhaseSetting& phase);

}  // namespace qif
