#include "qif/gaussian_oracle.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "qif/errors.hpp"
#include "qif/interferometer.hpp"

namespace qif {

double gaussian_overlap(double delta_over_w) { return std::exp(-0.25 * delta_over_w * delta_over_w); }

ClosedFormStats closed_form_stats(const MziParams& params) {
    const double t = params.t;
    if (!(t >= 0.0 && t <= 1.0)) throw RangeError("transmission t must lie in [0, 1], got " + std::to_string(t));
    const double r = std::sqrt(1.0 - t * t);
    const double delta = params.delta_over_w;
    const double cross = t * r * std::cos(params.alpha) * gaussian_overlap(delta);

    ClosedFormStats s;
    s.p_c = 0.5 - cross;
    s.p_d = 0.5 + cross;
    s.weighted_mean_c = 0.5 * delta * (r * r - cross);
    s.weighted_mean_d = 0.5 * delta * (r * r + cross);
    if (s.p_c >= kDarkPortThreshold) s.mean_c = s.weighted_mean_c / s.p_c;
    if (s.p_d >= kDarkPortThreshold) s.mean_d = s.weighted_mean_d / s.p_d;
    return s;
}

MinimumSearch find_min_mean_c(Interval t_range, Interval delta_range, int resolution, double alpha) {
    if (resolution < 2) throw RangeError("search resolution must be at least 2");
    if (!(t_range.lo <= t_range.hi) || !(delta_range.lo <= delta_range.hi))
        throw RangeError("empty search range");
    if (t_range.lo < 0.0 || t_range.hi > 1.0 || delta_range.lo < 0.0)
        throw RangeError("search range outside t in [0,1], delta >= 0");

    const auto node = [resolution](Interval iv, int i) {
        return iv.lo + (iv.hi - iv.lo) * static_cast<double>(i) / static_cast<double>(resolution - 1);
    };
    MinimumSearch best{0.0, 0.0, std::numeric_limits<double>::infinity()};
    for (int i = 0; i < resolution; ++i) {
        const double t = node(t_range, i);
        for (int j = 0; j < resolution; ++j) {
            const double delta = node(delta_range, j);
            const ClosedFormStats s = closed_form_stats({t, delta, alpha});
            if (s.mean_c && *s.mean_c < best.value) best = {t, delta, *s.mean_c};
        }
    }
    if (!std::isfinite(best.value)) throw RangeError("every cell of the search domain is a dark port");
    return best;
}

}  // namespace qif
