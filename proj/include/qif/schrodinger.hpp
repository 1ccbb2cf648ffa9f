#pragma once

// 1D split-step propagation (hbar = 1) used to check the impulsive-kick
// approximation against genuine dynamics under a uniform force.

#include "qif/interferometer.hpp"
#include "qif/wavepacket.hpp"

namespace qif {

// A uniform force F acting for a duration tau, i.e. V(z) = -F z, resolved
// into `substeps` Strang steps. The intended momentum kick is F * tau.
struct ImpulsePulse {
    double force = 0.0;
    double duration = 0.0;
    int substeps = 1;

    double kick() const { return force * duration; }
};

struct PropagationConfig {
    double mass = 1.0;
    double time_step = 1e-3;
    double total_time = 0.0;
};

// Exact kinetic evolution exp(-i p^2 t / 2m), applied in momentum space.
PositionWavefunction free_propagate(const PositionWavefunction& wf, double time, const PropagationConfig& config);

// Strang-split evolution (potential half step, kinetic step, potential half
// step) under V(z) = -F z for config.total_time, in steps of at most
// config.time_step. The potential factor exp(i F z dt/2) is applied exactly.
// Throws BoundaryLeakageError when more than 1e-6 of the probability sits in
// the outer sixteenth of either the position or the momentum window.
PositionWavefunction evolve_uniform_force(const PositionWavefunction& wf, double force,
                                          const PropagationConfig& config);

// evolve_uniform_force over pulse.duration with pulse.substeps equal steps.
// Only config.mass is used.
PositionWavefunction apply_impulse(const PositionWavefunction& wf, const ImpulsePulse& pulse,
                                   const PropagationConfig& config);

// |<shift(before, delta) | after>| / (|before| |after|).
double kick_fidelity(const MomentumWavefunction& before, const MomentumWavefunction& after, double delta);

struct PositionMoments {
    double mean = 0.0;
    double width = 0.0;  // standard deviation of |psi(z)|^2
};

PositionMoments position_moments(const PositionWavefunction& wf);

// Interferometer in which arm B receives its kick from apply_impulse while
// arm A propagates freely for the same duration, then both recombine at BS2.
MziOutcome run_mzi_impulse(const MomentumWavefunction& input, double t, const ImpulsePulse& pulse,
                           const PropagationConfig& config, const PhaseSetting& phase);

}  // namespace qif
