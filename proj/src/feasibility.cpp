#include "qif/feasibility.hpp"

#include <cmath>

#include "qif/errors.hpp"

namespace qif {

using namespace constants;

double ev_to_joule(double ev) { return ev * kElementaryCharge; }
double joule_to_ev(double joule) { return joule / kElementaryCharge; }

FeasibilityReport electron_report(const ElectronScenario& s) {
    for (double v : {s.kinetic_energy_ev, s.slit_width, s.drift_distance, s.plate_separation, s.plate_length})
        if (!(v > 0.0) || !std::isfinite(v)) throw RangeError("scenario lengths and energy must be positive");
    if (!(s.voltage >= 0.0) || !std::isfinite(s.voltage)) throw RangeError("capacitor voltage must be non-negative");

    const double energy = ev_to_joule(s.kinetic_energy_ev);
    const double rest_energy = kElectronMass * kSpeedOfLight * kSpeedOfLight;
    if (energy > 0.05 * rest_energy) throw RangeError("beam energy outside the non-relativistic regime");

    FeasibilityReport r;
    r.momentum = std::sqrt(2.0 * kElectronMass * energy);
    r.speed = r.momentum / kElectronMass;
    r.time_of_flight = s.drift_distance / r.speed;
    r.initial_width = s.slit_width / 2.0;
    const double spread = kHbar * r.time_of_flight / (2.0 * kElectronMass * r.initial_width * r.initial_width);
    r.beam_width_at_drift = r.initial_width * std::sqrt(1.0 + spread * spread);
    r.momentum_width = kHbar / (2.0 * r.initial_width);
    const double force = kElementaryCharge * s.voltage / s.plate_separation;
    r.kick = force * (s.plate_length / r.speed);
    r.ratio = r.kick / r.momentum_width;
    return r;
}

MziParams ratio_to_mzi_params(const FeasibilityReport& report, double t, double alpha) {
    return {t, report.ratio, alpha};
}

}  // namespace qif
