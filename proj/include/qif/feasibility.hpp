#pragma once

// SI estimates for an electron interferometer with a parallel-plate
// capacitor in one arm.

#include "qif/gaussian_oracle.hpp"

namespace qif {

// CODATA 2018, 10 significant digits.
namespace constants {
inline constexpr double kElectronMass = 9.109383702e-31;       // kg
inline constexpr double kElementaryCharge = 1.602176634e-19;   // C
inline constexpr double kHbar = 1.054571817e-34;               // J s
inline constexpr double kSpeedOfLight = 299792458.0;           // m/s
}  // namespace constants

// Path separation produced by 100 nm gratings with a 6 keV beam, 35 cm
// downstream. Reported as context only.
inline constexpr double kGratingPathSeparation = 55e-6;   // m
inline constexpr double kGratingSeparationDistance = 0.35;  // m

double ev_to_joule(double ev);
double joule_to_ev(double joule);

struct ElectronScenario {
    double kinetic_energy_ev = 6000.0;
    double slit_width = 1.5e-6;      // m
    double drift_distance = 1.0;     // m
    double plate_separation = 1e-3;  // m
    double plate_length = 1e-2;      // m
    double voltage = 0.2e-3;         // V
};

struct FeasibilityReport {
    double speed = 0.0;                // m/s
    double momentum = 0.0;             // kg m/s
    double time_of_flight = 0.0;       // s, over the drift distance
    double initial_width = 0.0;        // m, sigma_0 = slit/2
    double beam_width_at_drift = 0.0;  // m
    double momentum_width = 0.0;       // kg m/s, W = hbar / (2 sigma_0)
    double kick = 0.0;                 // kg m/s, e V L / (d v)
    double ratio = 0.0;                // kick / momentum_width
};

// Throws RangeError for non-positive geometry, negative voltage, or a beam
// energy above 5% of the electron rest energy.
FeasibilityReport electron_report(const ElectronScenario& scenario);

// The dimensionless kick delta/W as interferometer parameters.
MziParams ratio_to_mzi_params(const FeasibilityReport& report, double t, double alpha);

}  // namespace qif
