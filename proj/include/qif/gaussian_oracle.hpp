#pragma once

// Closed-form port statistics for a zero-mean Gaussian input of width W.
//
// With K = exp(-delta^2 / (4 W^2)), the overlap of the two arm wavefunctions,
//
//   P_C,D        = (1 -/+ 2 t r cos(alpha) K) / 2
//   P_j <p>_j    = delta (r^2 -/+ t r cos(alpha) K) / 2
//
// so that P_C <p>_C + P_D <p>_D = r^2 delta identically. All momenta are in
// units of W. These never touch the grid and serve as the reference that
// the grid pipeline is checked against.

#include <optional>

namespace qif {

struct MziParams {
    double t = 0.0;
    double delta_over_w = 0.0;
    double alpha = 0.0;
};

struct ClosedFormStats {
    double p_c = 0.0;
    double p_d = 0.0;
    double weighted_mean_c = 0.0;
    double weighted_mean_d = 0.0;
    // Empty for a dark port.
    std::optional<double> mean_c;
    std::optional<double> mean_d;
};

// integral Phi(p) Phi(p - delta) dp for unit-norm Gaussians of width W.
double gaussian_overlap(double delta_over_w);

// Throws RangeError unless t is in [0, 1].
ClosedFormStats closed_form_stats(const MziParams& params);

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};

struct MinimumSearch {
    double t = 0.0;
    double delta_over_w = 0.0;
    double value = 0.0;
};

// Dense grid search for the smallest <p>_C over [t_range] x [delta_range],
// `resolution` points per axis, endpoints included. Dark cells are skipped.
// Throws RangeError for an empty or out-of-range domain.
MinimumSearch find_min_mean_c(Interval t_range, Interval delta_range, int resolution, double alpha = 0.0);

}  // namespace qif
