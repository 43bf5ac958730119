#include "dftstat/fft.hpp"

#include <bit>
#include <cmath>
#include <cstdint>

#include "dftstat/errors.hpp"

namespace dftstat {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// In-place iterative radix-2; data.size() must be a power of two.
void radix2(std::vector<Complex>& data, FftSign sign) {
    const std::size_t n = data.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(data[i], data[j]);
    }
    if (n < 2) return;
    const double dir = sign == FftSign::Negative ? -1.0 : 1.0;
    // One table for the last stage; earlier stages stride through it. Each
    // entry is computed directly so the error stays O(eps log n).
    std::vector<Complex> twiddle(n / 2);
    for (std::size_t k = 0; k < n / 2; ++k) {
        twiddle[k] = std::polar(1.0, dir * kTwoPi * static_cast<double>(k) / static_cast<double>(n));
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t half = len / 2;
        const std::size_t stride = n / len;
        for (std::size_t start = 0; start < n; start += len) {
            for (std::size_t k = 0; k < half; ++k) {
                const Complex w = twiddle[k * stride];
                const Complex u = data[start + k];
                const Complex x = data[start + k + half];
                const Complex v{x.real() * w.real() - x.imag() * w.imag(), x.real() * w.imag() + x.imag() * w.real()};
                data[start + k] = u + v;
                data[start + k + half] = u - v;
            }
        }
    }
}

std::vector<Complex> bluestein(std::span<const Complex> input, FftSign sign) {
    const std::size_t n = input.size();
    const std::size_t m = std::bit_ceil(2 * n - 1);
    const double dir = sign == FftSign::Negative ? -1.0 : 1.0;

    // chirp[k] = exp(dir * i*pi*k^2/n); k^2 reduced mod 2n so the angle stays small.
    std::vector<Complex> chirp(n);
    const std::uint64_t period = 2 * static_cast<std::uint64_t>(n);
    for (std::size_t k = 0; k < n; ++k) {
        const std::uint64_t k2 = (static_cast<std::uint64_t>(k) * k) % period;
        chirp[k] = std::polar(1.0, dir * std::numbers::pi * static_cast<double>(k2) / static_cast<double>(n));
    }

    std::vector<Complex> a(m, Complex{});
    for (std::size_t k = 0; k < n; ++k) a[k] = input[k] * chirp[k];

    std::vector<Complex> b(m, Complex{});
    b[0] = std::conj(chirp[0]);
    for (std::size_t k = 1; k < n; ++k) {
        b[k] = std::conj(chirp[k]);
        b[m - k] = std::conj(chirp[k]);
    }

    radix2(a, FftSign::Negative);
    radix2(b, FftSign::Negative);
    for (std::size_t k = 0; k < m; ++k) a[k] *= b[k];
    radix2(a, FftSign::Positive);

    const double scale = 1.0 / static_cast<double>(m);
    std::vector<Complex> out(n);
    for (std::size_t k = 0; k < n; ++k) out[k] = a[k] * scale * chirp[k];
    return out;
}

}  // namespace

std::vector<Complex> fft(std::span<const Complex> input, FftSign sign) {
    if (input.empty()) return {};
    if (std::has_single_bit(input.size())) {
        std::vector<Complex> data(input.begin(), input.end());
        radix2(data, sign);
        return data;
    }
    return bluestein(input, sign);
}

std::vector<Complex> dft_canonical(std::span<const double> series) {
    const std::size_t n = series.size();
    if (n < 2) {
        throw InvalidInputError("dft_canonical: series needs at least 2 observations, got " +
                                std::to_string(n));
    }
    std::vector<Complex> data(series.begin(), series.end());
    auto out = fft(data, FftSign::Positive);

    // sum_{t=1}^{T} X_t e^{i t w_k} = e^{i w_k} * sum_{s=0}^{T-1} X_{s+1} e^{i s w_k}
    const double norm = 1.0 / std::sqrt(kTwoPi * static_cast<double>(n));
    for (std::size_t k = 0; k < n; ++k) {
        out[k] *= std::polar(norm, kTwoPi * static_cast<double>(k) / static_cast<double>(n));
    }
    return out;
}

}  // namespace dftstat
