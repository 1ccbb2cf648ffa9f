#pragma once

#include <complex>
#include <span>

namespace qif::detail {

enum class FftDirection { Forward, Backward };

// Unnormalized in-place DFT of a power-of-two length array.
// Forward uses exp(-2 pi i jk/n), Backward exp(+2 pi i jk/n). Thread-safe.
void fft_in_place(std::span<std::complex<double>> data, FftDirection direction);

}  // namespace qif::detail
