#pragma once

// Momentum-space wavefunctions on a uniform periodic grid.
//
// Units are natural: hbar = 1 and, by default, the Gaussian width W = 1, so
// momenta are in units of W and positions in units of 1/W.
//
// The momentum grid has nodes p_k = p_min + k*dp, k = 0..n-1, with
// dp = (p_max - p_min)/n (p_max itself is excluded). Its Fourier-conjugate
// position grid has dz = 2*pi/(n*dp) and nodes z_j = (j - n/2)*dz. The pair
//
//     psi(z)  = (2*pi)^(-1/2) * integral Phi(p) exp(+i p z) dp
//     Phi(p)  = (2*pi)^(-1/2) * integral psi(z) exp(-i p z) dz
//
// is discretized so that it is exactly unitary:  sum |Phi|^2 dp == sum |psi|^2 dz.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace qif {

using Complex = std::complex<double>;

struct GridSpec {
    std::size_t n_points = 4096;
    double p_min = -16.0;
    double p_max = 16.0;

    double span() const { return p_max - p_min; }
    double step() const { return span() / static_cast<double>(n_points); }
    double momentum(std::size_t k) const { return p_min + static_cast<double>(k) * step(); }

    // Conjugate position grid.
    double position_step() const;
    double position(std::size_t j) const;

    // Throws GridError unless n is a power of two >= 2 and p_max > p_min.
    void validate() const;

    friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

// Default grid: 4096 nodes on [-16W, 16W]. Supports kicks up to 2W with room to spare.
GridSpec default_grid();

// default_grid() with n_points replaced by $QIF_GRID_N when that is set.
GridSpec default_grid_from_env();

class MomentumWavefunction {
public:
    MomentumWavefunction(GridSpec grid, std::vector<Complex> amplitudes);

    static MomentumWavefunction zero(const GridSpec& grid);

    const GridSpec& grid() const { return grid_; }
    std::span<const Complex> amplitudes() const { return amplitudes_; }
    std::size_t size() const { return amplitudes_.size(); }
    Complex operator[](std::size_t k) const { return amplitudes_[k]; }

private:
    GridSpec grid_;
    std::vector<Complex> amplitudes_;
};

class PositionWavefunction {
public:
    // `momentum_grid` is the grid this state transforms back onto.
    PositionWavefunction(GridSpec momentum_grid, std::vector<Complex> amplitudes);

    const GridSpec& momentum_grid() const { return grid_; }
    std::span<const Complex> amplitudes() const { return amplitudes_; }
    std::size_t size() const { return amplitudes_.size(); }
    Complex operator[](std::size_t j) const { return amplitudes_[j]; }
    double position(std::size_t j) const { return grid_.position(j); }
    double step() const { return grid_.position_step(); }

private:
    GridSpec grid_;
    std::vector<Complex> amplitudes_;
};

struct GaussianParams {
    double width = 1.0;
    double mean = 0.0;
};

// Norms below this mark a dark (annihilated) state.
inline constexpr double kZeroNormThreshold = 1e-30;

// Samples pi^(-1/4) W^(-1/2) exp(-(p - mu)^2 / (2 W^2)).
// Throws GridError when the grid does not cover [mu - 6W, mu + 6W].
MomentumWavefunction gaussian_init(const GaussianParams& params, const GridSpec& grid);

// Total probability, sum |Phi|^2 dp. Quadratic in the amplitudes.
double norm(const MomentumWavefunction& wf);
double norm(const PositionWavefunction& wf);

// sum p |Phi|^2 dp, without dividing by the norm.
double first_moment(const MomentumWavefunction& wf);

// <p> and the second central moment. Both throw ZeroNormError on dark states.
double mean_momentum(const MomentumWavefunction& wf);
double variance_momentum(const MomentumWavefunction& wf);

// <a|b> = sum conj(a) b dp.
Complex inner_product(const MomentumWavefunction& a, const MomentumWavefunction& b);

// Phi(p) -> Phi(p - delta), done as a phase ramp exp(i delta z) in position
// space, so delta need not be a multiple of the grid step.
// Throws AliasingError unless |delta| < span/4.
MomentumWavefunction shift(const MomentumWavefunction& wf, double delta);

// a*wf1 + b*wf2 nodewise. Throws GridMismatchError for different grids.
MomentumWavefunction superpose(Complex a, const MomentumWavefunction& wf1, Complex b,
                               const MomentumWavefunction& wf2);

MomentumWavefunction scaled(Complex factor, const MomentumWavefunction& wf);

PositionWavefunction to_position(const MomentumWavefunction& wf);
MomentumWavefunction to_momentum(const PositionWavefunction& wf);

// Largest |a_k - b_k| over the grid.
double max_abs_difference(const MomentumWavefunction& a, const MomentumWavefunction& b);

}  // namespace qif
