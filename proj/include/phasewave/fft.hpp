#pragma once
/// Minimal radix-2 complex FFT used by the spectral propagation and
/// diagnostics. Self-contained, power-of-two lengths only.

#include <complex>
#include <cstddef>
#include <vector>

#include "phasewave/errors.hpp"

namespace phasewave::fft {

/// In-place forward transform, X_k = sum_j x_j exp(-2 pi i j k / n).
/// The length must be a power of two (n >= 1); otherwise DomainError.
void forward(std::vector<std::complex<double>>& data);

/// In-place inverse transform with 1/n normalization, so
/// inverse(forward(x)) reproduces x up to roundoff.
void inverse(std::vector<std::complex<double>>& data);

/// Angular wavenumbers matching the transform's bin order for node spacing
/// dx: k_j = 2 pi j / (n dx) for j < n/2, and 2 pi (j - n) / (n dx) for the
/// negative-frequency half.
std::vector<double> wavenumbers(std::size_t n, double dx);

}  // namespace phasewave::fft
