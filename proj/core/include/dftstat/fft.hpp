#pragma once

#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

namespace dftstat {

using Complex = std::complex<double>;

/// Canonical Fourier grid omega_k = 2*pi*k/T. Indices are taken modulo T,
/// so slot 0 holds omega_T = 2*pi (equivalently frequency zero).
struct FrequencyGrid {
    std::size_t length;

    [[nodiscard]] std::size_t size() const noexcept { return length; }

    [[nodiscard]] std::size_t slot(long long k) const noexcept {
        const auto n = static_cast<long long>(length);
        return static_cast<std::size_t>(((k % n) + n) % n);
    }

    [[nodiscard]] double omega(long long k) const noexcept {
        return 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(length);
    }
};

enum class FftSign {
    Negative,  ///< sum x_n exp(-2 pi i k n / N)
    Positive,  ///< sum x_n exp(+2 pi i k n / N)
};

/// Unnormalized discrete Fourier transform of arbitrary length.
/// Powers of two use an in-place radix-2 butterfly; every other length goes
/// through Bluestein's chirp-z convolution on a padded power-of-two grid.
std::vector<Complex> fft(std::span<const Complex> input, FftSign sign = FftSign::Negative);

/// J_T(omega_k) = (2 pi T)^{-1/2} sum_{t=1}^{T} X_t exp(i t omega_k).
///
/// The result is indexed by k mod T: element 0 is J_T(omega_T), element k is
/// J_T(omega_k) for 1 <= k < T. Throws InvalidInputError when T < 2.
std::vector<Complex> dft_canonical(std::span<const double> series);

}  // namespace dftstat
