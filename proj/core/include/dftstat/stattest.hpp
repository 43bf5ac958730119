#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "dftstat/fft.hpp"
#include "dftstat/spectral.hpp"

namespace dftstat {

// ---------------------------------------------------------------------------
// Lags and DFT covariances
// ---------------------------------------------------------------------------

/// Throws InvalidLagError unless 1 <= lag <= T-1 and lag != T/2.
void validate_lag(long long lag, std::size_t length);

/// Validates every lag and rejects an empty list or duplicates.
void validate_lags(std::span<const int> lags, std::size_t length);

/// r_n = n for n = 1..m.
std::vector<int> consecutive_lags(int m);

/// (1/T) sum_k J_k conj(J_{k+r}) / sqrt(f_k f_{k+r}), indices mod T.
/// Both spans are indexed by k mod T and must have equal length.
Complex dft_cov(std::span<const Complex> dft, int lag, std::span<const double> spectrum);

/// Covariance at `lag` using the DFT of `series` and a smoothed estimate
/// built from the same series.
Complex dft_cov(std::span<const double> series, int lag, const SpectralEstimate& spectral);

/// Same standardization, but with the true spectral density on the grid in
/// place of the estimate (the unobservable "oracle" covariance).
Complex dft_cov_oracle(std::span<const double> series, int lag, std::span<const double> true_spectrum);

// ---------------------------------------------------------------------------
// Fourth-cumulant correction for linear processes
// ---------------------------------------------------------------------------

/// Phase of A(w) = (2 pi)^{-1/2} sum_j psi_j e^{i w j}, via atan2.
/// Throws DegenerateTransferError when |A(w)| < 1e-12.
double phase(std::span<const double> psi, double omega);

inline constexpr std::size_t kDefaultVarphiGrid = 4096;

/// |(2 pi)^{-1} int_0^{2 pi} exp(i(phase(w) - phase(w + x))) dw|^2 by the
/// periodic rectangle rule on `grid` nodes (grid >= 1024). Always in [0, 1].
double varphi(std::span<const double> psi, double x, std::size_t grid = kDefaultVarphiGrid);

/// kappa_r = 0 for every lag.
struct GaussianCorrection {};

/// Linear process plug-in: 1 + (kappa4/2) varphi(2 pi r / T).
struct LinearPluginCorrection {
    std::vector<double> psi;
    double kappa4 = 0.0;
};

/// Caller-supplied kappa_r, one per lag: 1 + kappa_r / 2.
struct UserCorrection {
    std::vector<double> kappa;
};

using CorrectionSpec = std::variant<GaussianCorrection, LinearPluginCorrection, UserCorrection>;

std::string correction_name(const CorrectionSpec& spec);

/// Denominators 1 + kappa_{r_n}/2, one per lag. Throws InvalidCorrectionError
/// for malformed specs or a non-positive denominator.
std::vector<double> corrections(const CorrectionSpec& spec, std::span<const int> lags, std::size_t length);

// ---------------------------------------------------------------------------
// Test statistic
// ---------------------------------------------------------------------------

struct TestOptions {
    KernelKind kernel = KernelKind::Daniell;
    /// Empty means T^{-1/3}.
    std::optional<double> bandwidth;
    double ridge_factor = kDefaultRidgeFactor;
    CorrectionSpec correction = GaussianCorrection{};
    bool demean = true;
    std::vector<double> levels = {0.01, 0.05, 0.10};

    [[nodiscard]] KernelSpec kernel_for(std::size_t length) const;
};

struct LevelDecision {
    double level;
    double critical_value;  ///< upper alpha quantile of chi^2_{2m}
    bool reject;
};

struct TestResult {
    double statistic = 0.0;
    int dof = 0;
    double p_value = 1.0;
    std::vector<LevelDecision> decisions;

    std::vector<int> lags;
    std::vector<Complex> covariances;  ///< c_hat(r_n)
    std::vector<double> corrections;   ///< 1 + kappa_{r_n}/2
    std::size_t length = 0;
    KernelSpec kernel;
    double ridge = 0.0;
    bool bandwidth_warning = false;
    bool demeaned = true;
    std::string correction_mode;

    [[nodiscard]] std::optional<bool> reject_at(double level) const;
};

/// DFT and smoothed spectrum of a (demeaned) series, reusable across lags.
struct PreparedSeries {
    std::vector<Complex> dft;
    SpectralEstimate spectral;
    bool demeaned = true;

    [[nodiscard]] std::size_t size() const noexcept { return dft.size(); }
};

inline constexpr std::size_t kMinSeriesLength = 32;

/// Validates (T >= 32, finite, non-zero variance), optionally demeans, and
/// computes the DFT and spectral estimate.
PreparedSeries prepare_series(std::span<const double> series, const TestOptions& options);

/// Statistic, p-value and decisions from a prepared series and precomputed
/// correction denominators.
TestResult evaluate_statistic(const PreparedSeries& prepared, std::span<const int> lags,
                              std::span<const double> correction_values, const TestOptions& options);

/// T sum_n |c_hat(r_n)|^2 / correction_n with a chi^2_{2m} p-value.
TestResult test_statistic(std::span<const double> series, std::span<const int> lags,
                          const TestOptions& options = {});

// ---------------------------------------------------------------------------
// Segmentation
// ---------------------------------------------------------------------------

struct SegmentBlock {
    int depth = 0;
    std::size_t index = 0;  ///< position within its depth, 0-based
    std::size_t start = 0;  ///< first observation, 0-based
    std::size_t end = 0;    ///< one past the last observation
    TestResult result;
};

struct SegmentReport {
    int depth = 0;
    std::vector<SegmentBlock> blocks;  ///< depth-major order

    [[nodiscard]] std::vector<const SegmentBlock*> at_depth(int d) const;
};

/// Runs the test on the full series, then on halves, quarters, ... down to
/// 2^depth equal blocks (the remainder goes to each depth's last block).
/// Throws SegmentationDepthError when a leaf would be shorter than 32.
SegmentReport segment_test(std::span<const double> series, int depth, std::span<const int> lags,
                           const TestOptions& options = {});

}  // namespace dftstat
