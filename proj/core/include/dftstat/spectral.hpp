#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dftstat {

enum class KernelKind {
    Daniell,   ///< flat: K(x) = 1 on [-1/2, 1/2]
    Bartlett,  ///< triangular: K(x) = 2(1 - 2|x|) on [-1/2, 1/2]
};

std::string_view to_string(KernelKind kind);
KernelKind kernel_kind_from_string(std::string_view name);

/// Kernel density on [-1/2, 1/2] (integrates to 1); zero outside.
double kernel_value(KernelKind kind, double x);

/// Lag-window kernel and bandwidth. The kernel argument is the frequency
/// offset in cycles, (k - j) / T, scaled by 1/b, so the window spans about
/// b*T Fourier frequencies.
struct KernelSpec {
    KernelKind kind = KernelKind::Daniell;
    double bandwidth = 0.0;

    /// T^{-1/2} < b < T^{-1/4}.
    [[nodiscard]] bool admissible_for(std::size_t length) const;
};

/// b = T^{-1/3}.
double default_bandwidth(std::size_t length);

inline constexpr double kDefaultRidgeFactor = 1e-3;

/// Smoothed spectral density on the canonical grid, indexed by k mod T.
struct SpectralEstimate {
    std::vector<double> values;
    KernelSpec kernel;
    double ridge = 0.0;
    bool bandwidth_warning = false;

    [[nodiscard]] std::size_t size() const noexcept { return values.size(); }
};

/// |J_T(omega_k)|^2 indexed by k mod T.
std::vector<double> periodogram(std::span<const double> series);

/// Discrete kernel weights for offsets d = -h..h (h = floor(bT/2)), summing
/// to one. Throws BandwidthTooSmallError when bT < 3.
std::vector<double> kernel_weights(const KernelSpec& kernel, std::size_t length);

/// Circular kernel smoother over the periodogram, floored at
/// ridge_factor * mean(periodogram).
SpectralEstimate smooth_spectral(std::span<const double> periodogram, const KernelSpec& kernel,
                                 double ridge_factor = kDefaultRidgeFactor);

}  // namespace dftstat
