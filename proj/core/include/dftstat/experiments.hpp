#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "dftstat/fft.hpp"
#include "dftstat/simulate.hpp"
#include "dftstat/stattest.hpp"

namespace dftstat {

// ---------------------------------------------------------------------------
// Monte Carlo rejection studies
// ---------------------------------------------------------------------------

struct McConfig {
    ModelSpec model;
    std::size_t length = 512;
    std::vector<int> lags = {1};
    double level = 0.05;
    std::size_t replications = 1000;
    std::uint64_t seed = 1;
    TestOptions test;
    std::size_t burn_in = 500;
    std::size_t threads = 0;  ///< 0 = hardware concurrency
    std::size_t bins = 50;

    void validate() const;
};

struct Histogram {
    std::vector<double> edges;    ///< bins + 1 edges over [0, max]
    std::vector<std::size_t> counts;
    std::vector<double> density;  ///< counts / (n * width); integrates to 1
};

struct McReport {
    McConfig config;
    double critical_value = 0.0;  ///< upper-level quantile of chi^2_{2m}
    std::size_t rejections = 0;
    double rejection_rate = 0.0;  ///< rejections / replications
    std::vector<double> statistics;  ///< by replication index
    Histogram histogram;
};

/// Replication i simulates with stream_id i and applies the test, so the
/// report does not depend on the thread count.
McReport rejection_rate(const McConfig& config);

/// Normalized histogram on [0, max(statistics)] (or [0, 1] when that is 0).
Histogram empirical_density(std::span<const double> statistics, std::size_t bins = 50);

struct LagScanResult {
    std::vector<int> lags;
    std::vector<double> rejection_rates;
    std::vector<std::size_t> rejections;
    std::size_t replications = 0;
};

/// Per-lag rejection rate of the single-lag statistic. Each replication's
/// series is simulated once and tested at every lag.
LagScanResult lag_scan(const McConfig& config);

/// Calls task(i) for i = 0..count-1 on up to `threads` workers. The first
/// failing index is rethrown as ReplicationError.
void for_each_replication(std::size_t count, std::size_t threads, const std::function<void(std::size_t)>& task);

// ---------------------------------------------------------------------------
// Distribution checks
// ---------------------------------------------------------------------------

/// sup_x |F_n(x) - F(x)|.
double ks_distance(std::span<const double> samples, const std::function<double(double)>& cdf);

/// Asymptotic P(D_n > d) from the Kolmogorov distribution (with the
/// Stephens small-sample adjustment).
double ks_pvalue(double distance, std::size_t n);

/// Spearman rank correlation with average ranks for ties.
double spearman_correlation(std::span<const double> a, std::span<const double> b);

// ---------------------------------------------------------------------------
// Locally stationary power diagnostics
// ---------------------------------------------------------------------------

/// (1/T0) sum_{t=1}^{T0} sigma(t/T0) exp(-2 pi i r t / T0).
Complex sigma_fourier(const std::function<double(double)>& sigma, int r, std::size_t grid = 512);

struct PowerGrid {
    std::size_t u_intervals = 128;
    std::size_t lambda_intervals = 256;
};

/// f(w) = int_0^1 f(u, w) du at each w, by trapezoid in u.
std::vector<double> integrated_spectrum(const LocalSpectrum& f, std::span<const double> omegas,
                                        std::size_t u_intervals = 512);

/// B(r) = (2 pi)^{-1} int int f(u, l) e^{-2 pi i r u} / sqrt(f(l) f(l + w_r)) du dl.
///
/// Without `length` the shift w_r is taken as 0 (fixed r, T -> infinity);
/// with it w_r = 2 pi r / T. Requires u_intervals >= 128 and
/// lambda_intervals >= 256.
Complex noncentrality_B(const LocalSpectrum& f, int r, const PowerGrid& grid = {},
                        std::optional<std::size_t> length = std::nullopt);

struct PowerProfile {
    std::vector<int> lags;
    std::vector<Complex> b_values;
    /// (Re B(r_1), ..., Re B(r_m), Im B(r_1), ..., Im B(r_m)).
    std::vector<double> mu;
    /// Fourier coefficients of sigma(.) for scale-modulated models.
    std::optional<std::vector<Complex>> sigma_fourier;
};

struct PowerOptions {
    /// Zero u_intervals picks max(128, 16 * max|r|) so high lags are not aliased.
    PowerGrid grid{0, 256};
    std::optional<std::size_t> length;
    std::size_t sigma_grid = 512;
};

PowerProfile power_profile(const ModelSpec& model, std::span<const int> lags, const PowerOptions& options = {});

}  // namespace dftstat
