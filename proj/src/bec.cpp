#include "qif/bec.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qif/errors.hpp"

namespace qif {

SpinorWavefunction SpinorWavefunction::pure_a(const MomentumWavefunction& wf) {
    return {wf, MomentumWavefunction::zero(wf.grid())};
}

SpinorWavefunction microwave_pulse(const SpinorWavefunction& state, double t_coeff) {
    if (!(t_coeff >= 0.0 && t_coeff <= 1.0))
        throw RangeError("pulse coefficient must lie in [0, 1], got " + std::to_string(t_coeff));
    const double s = std::sqrt(1.0 - t_coeff * t_coeff);
    return {superpose(t_coeff, state.comp_a, -s, state.comp_b), superpose(s, state.comp_a, t_coeff, state.comp_b)};
}

SpinorWavefunction stern_gerlach(const SpinorWavefunction& state, const SgKick& kick) {
    return {shift(state.comp_a, kick.delta_a), shift(state.comp_b, kick.delta_b)};
}

PortOutcome select_internal(const SpinorWavefunction& state, InternalState which) {
    return which == InternalState::A ? port_stats(state.comp_a, Port::C) : port_stats(state.comp_b, Port::D);
}

SpinorWavefunction run_protocol_state(const MomentumWavefunction& initial, double t_coeff, double delta_a,
                                      double delta_b) {
    SpinorWavefunction state = microwave_pulse(SpinorWavefunction::pure_a(initial), t_coeff);
    state = stern_gerlach(state, {delta_a, delta_b});
    state = microwave_pulse(state, std::numbers::sqrt2 / 2.0);
    return stern_gerlach(state, {-delta_a, -delta_b});
}

PortOutcome run_protocol(const MomentumWavefunction& initial, double t_coeff, double delta_a, double delta_b,
                         InternalState which) {
    return select_internal(run_protocol_state(initial, t_coeff, delta_a, delta_b), which);
}

}  // namespace qif
