#pragma once

// Interferometer built from two internal atomic states |A>, |B>: microwave
// pulses play the beam splitters, state-dependent Stern-Gerlach kicks play the
// arm force, and state selection plays the exit port.

#include "qif/interferometer.hpp"
#include "qif/wavepacket.hpp"

namespace qif {

enum class InternalState { A, B };

struct SpinorWavefunction {
    MomentumWavefunction comp_a;
    MomentumWavefunction comp_b;

    static SpinorWavefunction pure_a(const MomentumWavefunction& wf);
    double total_norm() const { return norm(comp_a) + norm(comp_b); }
};

struct SgKick {
    double delta_a = 0.0;
    double delta_b = 0.0;
};

// Real rotation: |A> -> t|A> + s|B>, |B> -> -s|A> + t|B>, s = sqrt(1 - t^2).
// t = 1/sqrt(2) is the pi/2 pulse. Throws RangeError unless t is in [0, 1].
SpinorWavefunction microwave_pulse(const SpinorWavefunction& state, double t_coeff);

SpinorWavefunction stern_gerlach(const SpinorWavefunction& state, const SgKick& kick);

// Selecting A corresponds to MZI port C and B to port D; the outcome is
// labelled accordingly.
PortOutcome select_internal(const SpinorWavefunction& state, InternalState which);

// pulse(t) -> kick(da, db) -> pi/2 pulse -> kick(-da, -db), starting from
// initial|A>. The state is returned before selection.
SpinorWavefunction run_protocol_state(const MomentumWavefunction& initial, double t_coeff, double delta_a,
                                      double delta_b);

PortOutcome run_protocol(const MomentumWavefunction& initial, double t_coeff, double delta_a, double delta_b,
                         InternalState which = InternalState::A);

}  // namespace qif
