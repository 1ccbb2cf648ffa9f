#include "qif/wavepacket.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <string>

#include "qif/errors.hpp"
#include "qif/fourier.hpp"

namespace qif {

double GridSpec::position_step() const {
    return 2.0 * std::numbers::pi / (static_cast<double>(n_points) * step());
}

double GridSpec::position(std::size_t j) const {
    return (static_cast<double>(j) - static_cast<double>(n_points / 2)) * position_step();
}

void GridSpec::validate() const {
    if (n_points < 2 || !std::has_single_bit(n_points))
        throw GridError("grid size must be a power of two >= 2, got " + std::to_string(n_points));
    if (!std::isfinite(p_min) || !std::isfinite(p_max) || !(p_max > p_min))
        throw GridError("grid requires finite p_max > p_min");
}

GridSpec default_grid() { return GridSpec{}; }

GridSpec default_grid_from_env() {
    GridSpec grid = default_grid();
    if (const char* env = std::getenv("QIF_GRID_N"); env != nullptr && *env != '\0') {
        char* end = nullptr;
        const unsigned long long n = std::strtoull(env, &end, 10);
        if (end == env || *end != '\0') throw GridError(std::string("QIF_GRID_N is not an integer: ") + env);
        grid.n_points = static_cast<std::size_t>(n);
    }
    grid.validate();
    return grid;
}

MomentumWavefunction::MomentumWavefunction(GridSpec grid, std::vector<Complex> amplitudes)
    : grid_(grid), amplitudes_(std::move(amplitudes)) {
    grid_.validate();
    if (amplitudes_.size() != grid_.n_points)
        throw GridMismatchError("amplitude count does not match grid size");
    for (const Complex& a : amplitudes_)
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag()))
            throw RangeError("wavefunction amplitudes must be finite");
}

MomentumWavefunction MomentumWavefunction::zero(const GridSpec& grid) {
    return MomentumWavefunction(grid, std::vector<Complex>(grid.n_points));
}

PositionWavefunction::PositionWavefunction(GridSpec momentum_grid, std::vector<Complex> amplitudes)
    : grid_(momentum_grid), amplitudes_(std::move(amplitudes)) {
    grid_.validate();
    if (amplitudes_.size() != grid_.n_points)
        throw GridMismatchError("amplitude count does not match grid size");
}

namespace {

void require_same_grid(const GridSpec& a, const GridSpec& b) {
    if (!(a == b)) throw GridMismatchError("wavefunctions live on different grids");
}

double sum_squares(std::span<const Complex> amps) {
    double sum = 0.0;
    for (const Complex& a : amps) sum += std::norm(a);
    return sum;
}

double checked_norm(const MomentumWavefunction& wf) {
    const double n = norm(wf);
    if (n < kZeroNormThreshold) throw ZeroNormError("moment of a zero-norm wavefunction");
    return n;
}

}  // namespace

MomentumWavefunction gaussian_init(const GaussianParams& params, const GridSpec& grid) {
    grid.validate();
    if (!(params.width > 0.0) || !std::isfinite(params.width) || !std::isfinite(params.mean))
        throw RangeError("Gaussian width must be positive and finite");
    const double lo = params.mean - 6.0 * params.width;
    const double hi = params.mean + 6.0 * params.width;
    if (grid.p_min > lo || grid.p_max < hi)
        throw GridError("grid [" + std::to_string(grid.p_min) + ", " + std::to_string(grid.p_max) +
                        ") does not cover mean +/- 6 widths");

    const double prefactor = std::pow(std::numbers::pi, -0.25) / std::sqrt(params.width);
    std::vector<Complex> amps(grid.n_points);
    for (std::size_t k = 0; k < grid.n_points; ++k) {
        const double u = (grid.momentum(k) - params.mean) / params.width;
        amps[k] = prefactor * std::exp(-0.5 * u * u);
    }
    return MomentumWavefunction(grid, std::move(amps));
}

double norm(const MomentumWavefunction& wf) { return sum_squares(wf.amplitudes()) * wf.grid().step(); }

double norm(const PositionWavefunction& wf) { return sum_squares(wf.amplitudes()) * wf.step(); }

double first_moment(const MomentumWavefunction& wf) {
    const GridSpec& g = wf.grid();
    double sum = 0.0;
    for (std::size_t k = 0; k < wf.size(); ++k) sum += g.momentum(k) * std::norm(wf[k]);
    return sum * g.step();
}

double mean_momentum(const MomentumWavefunction& wf) {
    const double n = checked_norm(wf);
    return first_moment(wf) / n;
}

double variance_momentum(const MomentumWavefunction& wf) {
    const double n = checked_norm(wf);
    const double mean = first_moment(wf) / n;
    const GridSpec& g = wf.grid();
    double sum = 0.0;
    for (std::size_t k = 0; k < wf.size(); ++k) {
        const double d = g.momentum(k) - mean;
        sum += d * d * std::norm(wf[k]);
    }
    return sum * g.step() / n;
}

Complex inner_product(const MomentumWavefunction& a, const MomentumWavefunction& b) {
    require_same_grid(a.grid(), b.grid());
    Complex sum{};
    for (std::size_t k = 0; k < a.size(); ++k) sum += std::conj(a[k]) * b[k];
    return sum * a.grid().step();
}

PositionWavefunction to_position(const MomentumWavefunction& wf) {
    const GridSpec& g = wf.grid();
    std::vector<Complex> buf(wf.amplitudes().begin(), wf.amplitudes().end());
    // p_k z_j = p_min z_j + 2 pi jk/n - k pi
    for (std::size_t k = 1; k < buf.size(); k += 2) buf[k] = -buf[k];
    detail::fft_in_place(buf, detail::FftDirection::Backward);
    const double scale = g.step() / std::sqrt(2.0 * std::numbers::pi);
    for (std::size_t j = 0; j < buf.size(); ++j) buf[j] *= scale * std::polar(1.0, g.p_min * g.position(j));
    return PositionWavefunction(g, std::move(buf));
}

MomentumWavefunction to_momentum(const PositionWavefunction& wf) {
    const GridSpec& g = wf.momentum_grid();
    std::vector<Complex> buf(wf.amplitudes().begin(), wf.amplitudes().end());
    for (std::size_t j = 0; j < buf.size(); ++j) buf[j] *= std::polar(1.0, -g.p_min * g.position(j));
    detail::fft_in_place(buf, detail::FftDirection::Forward);
    const double scale = g.position_step() / std::sqrt(2.0 * std::numbers::pi);
    for (std::size_t k = 0; k < buf.size(); ++k) buf[k] *= (k % 2 == 0) ? scale : -scale;
    return MomentumWavefunction(g, std::move(buf));
}

MomentumWavefunction shift(const MomentumWavefunction& wf, double delta) {
    const GridSpec& g = wf.grid();
    if (!std::isfinite(delta) || std::abs(delta) >= g.span() / 4.0)
        throw AliasingError("momentum shift " + std::to_string(delta) + " exceeds a quarter of the grid span");
    if (delta == 0.0) return wf;
    PositionWavefunction pos = to_position(wf);
    std::vector<Complex> buf(pos.amplitudes().begin(), pos.amplitudes().end());
    for (std::size_t j = 0; j < buf.size(); ++j) buf[j] *= std::polar(1.0, delta * g.position(j));
    return to_momentum(PositionWavefunction(g, std::move(buf)));
}

MomentumWavefunction superpose(Complex a, const MomentumWavefunction& wf1, Complex b,
                               const MomentumWavefunction& wf2) {
    require_same_grid(wf1.grid(), wf2.grid());
    std::vector<Complex> out(wf1.size());
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = a * wf1[k] + b * wf2[k];
    return MomentumWavefunction(wf1.grid(), std::move(out));
}

MomentumWavefunction scaled(Complex factor, const MomentumWavefunction& wf) {
    std::vector<Complex> out(wf.amplitudes().begin(), wf.amplitudes().end());
    for (Complex& a : out) a *= factor;
    return MomentumWavefunction(wf.grid(), std::move(out));
}

double max_abs_difference(const MomentumWavefunction& a, const MomentumWavefunction& b) {
    require_same_grid(a.grid(), b.grid());
    double worst = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) worst = std::max(worst, std::abs(a[k] - b[k]));
    return worst;
}

}  // namespace qif
