#include "phasewave/fft.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace phasewave::fft {

namespace {

constexpr double kPi = 3.14159265358979323846;

void transform(std::vector<std::complex<double>>& a, bool inverse_sign) {
  const std::size_t n = a.size();
  if (n == 0 || (n & (n - 1)) != 0) {
    throw DomainError("fft: length must be a power of two, got " +
                      std::to_string(n));
  }
  // Bit-reversal permutation.
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  // Iterative Cooley-Tukey butterflies; one twiddle table per stage (shared
  // by every block of that stage).
  std::vector<std::complex<double>> w;
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len / 2;
    const double ang = (inverse_sign ? 2.0 : -2.0) * kPi / static_cast<double>(len);
    w.resize(half);
    for (std::size_t j = 0; j < half; ++j) {
      w[j] = std::polar(1.0, ang * static_cast<double>(j));
    }
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t j = 0; j < half; ++j) {
        const std::complex<double> u = a[i + j];
        const std::complex<double> v = a[i + j + half] * w[j];
        a[i + j] = u + v;
        a[i + j + half] = u - v;
      }
    }
  }
  if (inverse_sign) {
    const double scale = 1.0 / static_cast<double>(n);
    for (auto& v : a) v *= scale;
  }
}

}  // namespace

void forward(std::vector<std::complex<double>>& data) {
  transform(data, false);
}

void inverse(std::vector<std::complex<double>>& data) {
  transform(data, true);
}

std::vector<double> wavenumbers(std::size_t n, double dx) {
  if (n == 0 || (n & (n - 1)) != 0) {
    throw DomainError("fft: length must be a power of two, got " +
                      std::to_string(n));
  }
  if (!(dx > 0.0)) throw DomainError("fft: spacing must be positive");
  std::vector<double> k(n);
  const double dk = 2.0 * kPi / (static_cast<double>(n) * dx);
  for (std::size_t j = 0; j < n; ++j) {
    const double idx = (j < n / 2) ? static_cast<double>(j)
                                   : static_cast<double>(j) -
                                         static_cast<double>(n);
    k[j] = dk * idx;
  }
  return k;
}

}  // namespace phasewave::fft
