#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qif/errors.hpp"
#include "qif/gaussian_oracle.hpp"
#include "qif/schrodinger.hpp"

using namespace qif;

namespace {

const GridSpec kGrid = default_grid();
const MomentumWavefunction kGauss = gaussian_init({1.0, 0.0}, kGrid);

double spread_width(double sigma0, double time, double mass) {
    const double s = time / (2.0 * mass * sigma0 * sigma0);
    return sigma0 * std::sqrt(1.0 + s * s);
}

}  // namespace

TEST_CASE("zero time and zero force are identities") {
    const PositionWavefunction pos = to_position(kGauss);
    const auto same = [&](const PositionWavefunction& out) {
        return max_abs_difference(to_momentum(out), to_momentum(pos)) == 0.0;
    };
    CHECK(same(free_propagate(pos, 0.0, {})));
    CHECK(same(evolve_uniform_force(pos, 3.0, {1.0, 1e-3, 0.0})));
    CHECK(same(apply_impulse(pos, {5.0, 0.0, 10}, {})));
}

TEST_CASE("free spreading follows sigma0 sqrt(1 + (t / 2 m sigma0^2)^2)") {
    const PositionWavefunction pos = to_position(kGauss);
    const double sigma0 = 1.0 / std::numbers::sqrt2;
    CHECK(std::abs(position_moments(pos).width - sigma0) < 1e-9);
    for (double mass : {1.0, 2.5}) {
        for (double time : {0.5, 2.0, 10.0}) {
            const PositionMoments m = position_moments(free_propagate(pos, time, {mass, 1e-3, 0.0}));
            CHECK(std::abs(m.width - spread_width(sigma0, time, mass)) < 1e-6);
            CHECK(std::abs(m.mean) < 1e-9);
        }
    }
    // Same law through the split-step integrator with F = 0.
    const PositionMoments m = position_moments(evolve_uniform_force(pos, 0.0, {1.0, 0.01, 3.0}));
    CHECK(std::abs(m.width - spread_width(sigma0, 3.0, 1.0)) < 1e-6);
}

TEST_CASE("free propagation leaves the momentum distribution unchanged") {
    const MomentumWavefunction after = to_momentum(free_propagate(to_position(kGauss), 4.0, {}));
    double worst = 0.0;
    for (std::size_t k = 0; k < after.size(); ++k)
        worst = std::max(worst, std::abs(std::abs(after[k]) - std::abs(kGauss[k])));
    CHECK(worst < 1e-12);
}

TEST_CASE("Ehrenfest: uniform force accelerates the centroid") {
    const MomentumWavefunction start = gaussian_init({1.0, 0.5}, kGrid);
    const double force = 0.8, mass = 2.0, time = 1.5;
    const PositionWavefunction end = evolve_uniform_force(to_position(start), force, {mass, 1e-3, time});
    const MomentumWavefunction end_p = to_momentum(end);
    CHECK(std::abs(mean_momentum(end_p) - (0.5 + force * time)) < 1e-9);
    CHECK(std::abs(variance_momentum(end_p) - 0.5) < 1e-6);
    const double expected_z = 0.5 * time / mass + 0.5 * force * time * time / mass;
    CHECK(std::abs(position_moments(end).mean - expected_z) < 1e-6);
}

TEST_CASE("split-step evolution conserves the norm") {
    const PositionWavefunction end = evolve_uniform_force(to_position(kGauss), 1.0, {1.0, 1e-4, 1.0});
    CHECK(std::abs(norm(end) - norm(kGauss)) <= 1e-9);
}

TEST_CASE("boundary leakage is reported") {
    const GridSpec small{256, -8.0, 8.0};
    const PositionWavefunction pos = to_position(gaussian_init({1.0, 0.0}, small));
    SUBCASE("momentum window") {
        CHECK_THROWS_AS(evolve_uniform_force(pos, 10.0, {1.0, 1e-2, 1.0}), BoundaryLeakageError);
    }
    SUBCASE("position window") {
        CHECK_THROWS_AS(evolve_uniform_force(pos, 0.0, {1.0, 1.0, 100.0}), BoundaryLeakageError);
    }
    SUBCASE("short run stays clear") { CHECK_NOTHROW(evolve_uniform_force(pos, 1.0, {1.0, 1e-2, 1.0})); }
}

TEST_CASE("invalid parameters") {
    const PositionWavefunction pos = to_position(kGauss);
    CHECK_THROWS_AS(free_propagate(pos, 1.0, {0.0, 1e-3, 0.0}), RangeError);
    CHECK_THROWS_AS(evolve_uniform_force(pos, 1.0, {1.0, 0.0, 1.0}), RangeError);
    CHECK_THROWS_AS(evolve_uniform_force(pos, 1.0, {1.0, 1e-3, -1.0}), RangeError);
    CHECK_THROWS_AS(apply_impulse(pos, {1.0, 0.1, 0}, {}), RangeError);
    CHECK_THROWS_AS(kick_fidelity(MomentumWavefunction::zero(kGrid), kGauss, 0.1), ZeroNormError);
}

TEST_CASE("impulsive kick") {
    const PositionWavefunction pos = to_position(kGauss);
    SUBCASE("short strong pulse reproduces the ideal shift") {
        const ImpulsePulse pulse{20.0, 0.01, 100};
        const MomentumWavefunction after = to_momentum(apply_impulse(pos, pulse, {1.0, 1e-3, 0.0}));
        CHECK(kick_fidelity(kGauss, after, pulse.kick()) >= 0.999);
        CHECK(std::abs(mean_momentum(after) - 0.2) < 1e-9);
    }
    SUBCASE("heavy particle") {
        const ImpulsePulse pulse{1.0, 0.2, 200};
        const MomentumWavefunction after = to_momentum(apply_impulse(pos, pulse, {1e4, 1e-3, 0.0}));
        CHECK(kick_fidelity(kGauss, after, 0.2) > 0.9999999);
    }
    SUBCASE("fidelity improves monotonically as the pulse shortens") {
        const double delta = 0.2;
        double previous = 0.0;
        for (double tau : {2.0, 1.0, 0.5, 0.1, 0.01}) {
            const ImpulsePulse pulse{delta / tau, tau, 200};
            const MomentumWavefunction after = to_momentum(apply_impulse(pos, pulse, {}));
            const double f = kick_fidelity(kGauss, after, delta);
            CHECK(f > previous);
            CHECK(std::abs(mean_momentum(after) - delta) < 1e-9);
            previous = f;
        }
        CHECK(previous >= 0.999);
    }
}

TEST_CASE("interferometer with a resolved pulse matches the ideal kick") {
    const ImpulsePulse pulse{20.0, 0.01, 100};
    const PropagationConfig config{1e4, 1e-3, 0.0};
    for (double t : {0.5, 0.85}) {
        const MziOutcome o = run_mzi_impulse(kGauss, t, pulse, config, PhaseSetting{});
        const ClosedFormStats s = closed_form_stats({t, pulse.kick(), 0.0});
        CHECK(std::abs(o.c.probability - s.p_c) < 1e-4);
        CHECK(std::abs(*o.c.mean_p - *s.mean_c) < 1e-4);
        CHECK(std::abs(o.d.probability - s.p_d) < 1e-4);
        CHECK(std::abs(*o.d.mean_p - *s.mean_d) < 1e-4);
    }
}
