#include "dftstat/stattest.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <set>
#include <sstream>

#include "dftstat/chisq.hpp"
#include "dftstat/errors.hpp"

namespace dftstat {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void check_finite_vector(std::span<const double> values, const char* what) {
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i])) {
            std::ostringstream msg;
            msg << what << ": non-finite value at index " << i;
            throw InvalidInputError(msg.str());
        }
    }
}

}  // namespace

void validate_lag(long long lag, std::size_t length) {
    const auto t = static_cast<long long>(length);
    if (lag < 1 || lag > t - 1) {
        throw InvalidLagError("lag " + std::to_string(lag) + " outside 1.." + std::to_string(t - 1));
    }
    if (t % 2 == 0 && lag == t / 2) {
        throw InvalidLagError("lag " + std::to_string(lag) + " equals T/2, which is excluded");
    }
}

void validate_lags(std::span<const int> lags, std::size_t length) {
    if (lags.empty()) throw InvalidLagError("at least one lag is required");
    std::set<int> seen;
    for (const int r : lags) {
        validate_lag(r, length);
        if (!seen.insert(r).second) throw InvalidLagError("duplicate lag " + std::to_string(r));
    }
}

std::vector<int> consecutive_lags(int m) {
    if (m < 1) throw InvalidLagError("number of lags m must be >= 1");
    std::vector<int> lags(static_cast<std::size_t>(m));
    std::iota(lags.begin(), lags.end(), 1);
    return lags;
}

Complex dft_cov(std::span<const Complex> dft, int lag, std::span<const double> spectrum) {
    const std::size_t n = dft.size();
    if (spectrum.size() != n) {
        throw InvalidInputError("dft_cov: spectrum length " + std::to_string(spectrum.size()) +
                                " does not match DFT length " + std::to_string(n));
    }
    validate_lag(lag, n);
    const auto shift = static_cast<std::size_t>(lag);
    Complex acc{};
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t kr = (k + shift) % n;
        acc += dft[k] * std::conj(dft[kr]) / std::sqrt(spectrum[k] * spectrum[kr]);
    }
    return acc / static_cast<double>(n);
}

Complex dft_cov(std::span<const double> series, int lag, const SpectralEstimate& spectral) {
    const auto dft = dft_canonical(series);
    return dft_cov(dft, lag, spectral.values);
}

Complex dft_cov_oracle(std::span<const double> series, int lag, std::span<const double> true_spectrum) {
    const auto dft = dft_canonical(series);
    return dft_cov(dft, lag, true_spectrum);
}

double phase(std::span<const double> psi, double omega) {
    Complex a{};
    for (std::size_t j = 0; j < psi.size(); ++j) {
        a += psi[j] * std::polar(1.0, omega * static_cast<double>(j));
    }
    a /= std::sqrt(kTwoPi);
    if (std::abs(a) < 1e-12) {
        std::ostringstream msg;
        msg << "degenerate transfer function: |A(" << omega << ")| < 1e-12";
        throw DegenerateTransferError(msg.str());
    }
    return std::atan2(a.imag(), a.real());
}

double varphi(std::span<const double> psi, double x, std::size_t grid) {
    if (grid < 1024) throw InvalidInputError("varphi: quadrature grid must have at least 1024 nodes");
    Complex acc{};
    for (std::size_t j = 0; j < grid; ++j) {
        const double w = kTwoPi * static_cast<double>(j) / static_cast<double>(grid);
        acc += std::polar(1.0, phase(psi, w) - phase(psi, w + x));
    }
    acc /= static_cast<double>(grid);
    return std::clamp(std::norm(acc), 0.0, 1.0);
}

std::string correction_name(const CorrectionSpec& spec) {
    return std::visit(Overloaded{[](const GaussianCorrection&) { return std::string("gaussian"); },
                                 [](const LinearPluginCorrection&) { return std::string("linear"); },
                                 [](const UserCorrection&) { return std::string("user"); }},
                      spec);
}

std::vector<double> corrections(const CorrectionSpec& spec, std::span<const int> lags, std::size_t length) {
    std::vector<double> out(lags.size(), 1.0);
    std::visit(Overloaded{
                   [](const GaussianCorrection&) {},
                   [&](const LinearPluginCorrection& linear) {
                       if (linear.psi.empty() || linear.psi.front() == 0.0) {
                           throw InvalidCorrectionError("linear correction needs psi coefficients with psi_0 != 0");
                       }
                       for (const double p : linear.psi) {
                           if (!std::isfinite(p)) throw InvalidCorrectionError("linear correction: non-finite psi");
                       }
                       if (!std::isfinite(linear.kappa4)) {
                           throw InvalidCorrectionError("linear correction: non-finite kappa4");
                       }
                       if (linear.kappa4 == 0.0) return;
                       for (std::size_t n = 0; n < lags.size(); ++n) {
                           const double x = kTwoPi * lags[n] / static_cast<double>(length);
                           out[n] = 1.0 + 0.5 * linear.kappa4 * varphi(linear.psi, x);
                       }
                   },
                   [&](const UserCorrection& user) {
                       if (user.kappa.size() != lags.size()) {
                           throw InvalidCorrectionError("user correction: " + std::to_string(user.kappa.size()) +
                                                        " kappa values for " + std::to_string(lags.size()) +
                                                        " lags");
                       }
                       for (std::size_t n = 0; n < lags.size(); ++n) out[n] = 1.0 + 0.5 * user.kappa[n];
                   }},
               spec);
    for (std::size_t n = 0; n < out.size(); ++n) {
        if (!(out[n] > 0.0) || !std::isfinite(out[n])) {
            std::ostringstream msg;
            msg << "correction denominator " << out[n] << " at lag " << lags[n] << " is not positive";
            throw InvalidCorrectionError(msg.str());
        }
    }
    return out;
}

KernelSpec TestOptions::kernel_for(std::size_t length) const {
    return KernelSpec{kernel, bandwidth.value_or(default_bandwidth(length))};
}

std::optional<bool> TestResult::reject_at(double level) const {
    for (const auto& d : decisions) {
        if (d.level == level) return d.reject;
    }
    return std::nullopt;
}

PreparedSeries prepare_series(std::span<const double> series, const TestOptions& options) {
    const std::size_t n = series.size();
    if (n < kMinSeriesLength) {
        throw InvalidInputError("series too short: T = " + std::to_string(n) + " < " +
                                std::to_string(kMinSeriesLength));
    }
    check_finite_vector(series, "series");

    const double mean = std::accumulate(series.begin(), series.end(), 0.0) / static_cast<double>(n);
    std::vector<double> work(series.begin(), series.end());
    double sumsq = 0.0;
    for (auto& x : work) {
        const double centred = x - mean;
        sumsq += centred * centred;
        if (options.demean) x = centred;
    }
    if (sumsq == 0.0) throw InvalidInputError("degenerate series: zero variance");

    PreparedSeries prepared;
    prepared.demeaned = options.demean;
    prepared.dft = dft_canonical(work);
    std::vector<double> pgram(n);
    std::transform(prepared.dft.begin(), prepared.dft.end(), pgram.begin(),
                   [](const Complex& z) { return std::norm(z); });
    prepared.spectral = smooth_spectral(pgram, options.kernel_for(n), options.ridge_factor);
    return prepared;
}

TestResult evaluate_statistic(const PreparedSeries& prepared, std::span<const int> lags,
                              std::span<const double> correction_values, const TestOptions& options) {
    const std::size_t n = prepared.size();
    validate_lags(lags, n);
    if (correction_values.size() != lags.size()) {
        throw InvalidCorrectionError("correction count does not match lag count");
    }

    TestResult result;
    result.length = n;
    result.lags.assign(lags.begin(), lags.end());
    result.corrections.assign(correction_values.begin(), correction_values.end());
    result.kernel = prepared.spectral.kernel;
    result.ridge = prepared.spectral.ridge;
    result.bandwidth_warning = prepared.spectral.bandwidth_warning;
    result.demeaned = prepared.demeaned;
    result.correction_mode = correction_name(options.correction);

    double stat = 0.0;
    result.covariances.reserve(lags.size());
    for (std::size_t i = 0; i < lags.size(); ++i) {
        const Complex c = dft_cov(prepared.dft, lags[i], prepared.spectral.values);
        result.covariances.push_back(c);
        stat += std::norm(c) / correction_values[i];
    }
    result.statistic = static_cast<double>(n) * stat;
    result.dof = 2 * static_cast<int>(lags.size());
    result.p_value = chisq_sf(result.statistic, result.dof);
    for (const double level : options.levels) {
        if (!(level > 0.0 && level < 1.0)) {
            throw InvalidInputError("significance level must lie in (0, 1), got " + std::to_string(level));
        }
        const double crit = chisq_quantile(1.0 - level, result.dof);
        result.decisions.push_back({level, crit, result.statistic > crit});
    }
    return result;
}

TestResult test_statistic(std::span<const double> series, std::span<const int> lags, const TestOptions& options) {
    // Lags first: a bad lag should not cost a DFT.
    validate_lags(lags, series.size() < kMinSeriesLength ? kMinSeriesLength : series.size());
    const auto prepared = prepare_series(series, options);
    const auto denominators = corrections(options.correction, lags, series.size());
    return evaluate_statistic(prepared, lags, denominators, options);
}

std::vector<const SegmentBlock*> SegmentReport::at_depth(int d) const {
    std::vector<const SegmentBlock*> out;
    for (const auto& b : blocks) {
        if (b.depth == d) out.push_back(&b);
    }
    return out;
}

SegmentReport segment_test(std::span<const double> series, int depth, std::span<const int> lags,
                           const TestOptions& options) {
    if (depth < 0) throw SegmentationDepthError("segmentation depth must be >= 0");
    if (depth > 30) throw SegmentationDepthError("segmentation depth " + std::to_string(depth) + " is too deep");
    const std::size_t n = series.size();
    const std::size_t leaves = std::size_t{1} << depth;
    const std::size_t leaf = n / leaves;
    if (leaf < kMinSeriesLength) {
        throw SegmentationDepthError("depth " + std::to_string(depth) + " gives leaf blocks of length " +
                                     std::to_string(leaf) + " < " + std::to_string(kMinSeriesLength));
    }

    SegmentReport report;
    report.depth = depth;
    for (int d = 0; d <= depth; ++d) {
        const std::size_t count = std::size_t{1} << d;
        const std::size_t width = n / count;
        for (std::size_t i = 0; i < count; ++i) {
            SegmentBlock block;
            block.depth = d;
            block.index = i;
            block.start = i * width;
            block.end = (i + 1 == count) ? n : (i + 1) * width;
            block.result = test_statistic(series.subspan(block.start, block.end - block.start), lags, options);
            report.blocks.push_back(std::move(block));
        }
    }
    return report;
}

}  // namespace dftstat
