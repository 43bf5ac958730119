#include "dftstat/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "dftstat/errors.hpp"
#include "dftstat/fft.hpp"

namespace dftstat {

std::string_view to_string(KernelKind kind) {
    switch (kind) {
        case KernelKind::Daniell:
            return "daniell";
        case KernelKind::Bartlett:
            return "bartlett";
    }
    return "unknown";
}

KernelKind kernel_kind_from_string(std::string_view name) {
    if (name == "daniell" || name == "flat") return KernelKind::Daniell;
    if (name == "bartlett" || name == "triangular") return KernelKind::Bartlett;
    throw InvalidInputError("unknown kernel '" + std::string(name) + "' (expected daniell or bartlett)");
}

double kernel_value(KernelKind kind, double x) {
    const double ax = std::abs(x);
    if (ax > 0.5) return 0.0;
    switch (kind) {
        case KernelKind::Daniell:
            return 1.0;
        case KernelKind::Bartlett:
            return 2.0 * (1.0 - 2.0 * ax);
    }
    return 0.0;
}

bool KernelSpec::admissible_for(std::size_t length) const {
    const double t = static_cast<double>(length);
    return bandwidth > std::pow(t, -0.5) && bandwidth < std::pow(t, -0.25);
}

double default_bandwidth(std::size_t length) { return std::pow(static_cast<double>(length), -1.0 / 3.0); }

std::vector<double> periodogram(std::span<const double> series) {
    const auto dft = dft_canonical(series);
    std::vector<double> out(dft.size());
    std::transform(dft.begin(), dft.end(), out.begin(), [](const Complex& z) { return std::norm(z); });
    return out;
}

std::vector<double> kernel_weights(const KernelSpec& kernel, std::size_t length) {
    if (!(kernel.bandwidth > 0.0 && kernel.bandwidth < 0.5)) {
        throw InvalidInputError("bandwidth must lie in (0, 1/2), got " + std::to_string(kernel.bandwidth));
    }
    const double width = kernel.bandwidth * static_cast<double>(length);
    if (width < 3.0) {
        throw BandwidthTooSmallError("bandwidth too small: b*T = " + std::to_string(width) +
                                     " < 3 frequencies in the kernel window");
    }
    const auto half = static_cast<std::ptrdiff_t>(std::floor(width / 2.0));
    std::vector<double> weights(static_cast<std::size_t>(2 * half + 1));
    for (std::ptrdiff_t d = -half; d <= half; ++d) {
        weights[static_cast<std::size_t>(d + half)] = kernel_value(kernel.kind, static_cast<double>(d) / width);
    }
    // Drop zero tails (Bartlett endpoints) so the window stays tight.
    while (weights.size() > 1 && weights.front() == 0.0 && weights.back() == 0.0) {
        weights.erase(weights.begin());
        weights.pop_back();
    }
    const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
    for (auto& w : weights) w /= total;
    return weights;
}

SpectralEstimate smooth_spectral(std::span<const double> periodogram, const KernelSpec& kernel,
                                 double ridge_factor) {
    const std::size_t n = periodogram.size();
    if (n < 2) throw InvalidInputError("smooth_spectral: periodogram needs at least 2 ordinates");
    if (!(ridge_factor >= 0.0)) throw InvalidInputError("smooth_spectral: ridge factor must be >= 0");

    const auto weights = kernel_weights(kernel, n);
    const auto half = static_cast<std::ptrdiff_t>(weights.size() / 2);
    const auto tn = static_cast<std::ptrdiff_t>(n);

    SpectralEstimate est;
    est.kernel = kernel;
    est.bandwidth_warning = !kernel.admissible_for(n);
    est.values.assign(n, 0.0);
    for (std::ptrdiff_t k = 0; k < tn; ++k) {
        double acc = 0.0;
        for (std::ptrdiff_t d = -half; d <= half; ++d) {
            const std::ptrdiff_t j = ((k + d) % tn + tn) % tn;
            acc += weights[static_cast<std::size_t>(d + half)] * periodogram[static_cast<std::size_t>(j)];
        }
        est.values[static_cast<std::size_t>(k)] = acc;
    }

    const double mean = std::accumulate(periodogram.begin(), periodogram.end(), 0.0) / static_cast<double>(n);
    est.ridge = ridge_factor * mean;
    for (auto& v : est.values) v = std::max(v, est.ridge);
    if (!(*std::min_element(est.values.begin(), est.values.end()) > 0.0)) {
        throw DegenerateSpectrumError("spectral estimate is not bounded away from zero (zero periodogram?)");
    }
    return est;
}

}  // namespace dftstat
