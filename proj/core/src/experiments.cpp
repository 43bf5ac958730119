#include "dftstat/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <numeric>
#include <thread>

#include "dftstat/chisq.hpp"
#include "dftstat/errors.hpp"
#include "dftstat/quadrature.hpp"

namespace dftstat {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::size_t resolve_threads(std::size_t requested, std::size_t work) {
    std::size_t n = requested == 0 ? std::max<std::size_t>(1, std::thread::hardware_concurrency()) : requested;
    return std::max<std::size_t>(1, std::min(n, work));
}

GeneratorConfig generator_for(const McConfig& config, std::size_t replication) {
    GeneratorConfig gen;
    gen.length = config.length;
    gen.burn_in = config.burn_in;
    gen.seed = config.seed;
    gen.stream_id = replication;
    return gen;
}

std::vector<double> average_ranks(std::span<const double> values) {
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<double> ranks(values.size());
    for (std::size_t i = 0; i < order.size();) {
        std::size_t j = i;
        while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
        const double rank = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
        i = j + 1;
    }
    return ranks;
}

}  // namespace

void McConfig::validate() const {
    if (replications < 1) throw InvalidInputError("replications must be >= 1");
    if (!(level > 0.0 && level < 1.0)) throw InvalidInputError("level must lie in (0, 1)");
    if (length < kMinSeriesLength) {
        throw InvalidInputError("series length must be >= " + std::to_string(kMinSeriesLength));
    }
    if (bins < 2) throw InvalidInputError("histogram needs at least 2 bins");
    validate_lags(lags, length);
    validate_model(model);
    (void)kernel_weights(test.kernel_for(length), length);
}

void for_each_replication(std::size_t count, std::size_t threads, const std::function<void(std::size_t)>& task) {
    const std::size_t workers = resolve_threads(threads, count);
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::mutex error_mutex;
    std::size_t failed_index = count;
    std::exception_ptr failure;

    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count || failed.load()) return;
            try {
                task(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (i < failed_index) {
                    failed_index = i;
                    failure = std::current_exception();
                }
                failed.store(true);
            }
        }
    };

    if (workers == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
    }

    if (failure) {
        try {
            std::rethrow_exception(failure);
        } catch (const Error& e) {
            throw ReplicationError(e, failed_index);
        } catch (const std::exception& e) {
            throw ReplicationError(NumericalError(e.what()), failed_index);
        }
    }
}

McReport rejection_rate(const McConfig& config) {
    config.validate();

    McReport report;
    report.config = config;
    const int dof = 2 * static_cast<int>(config.lags.size());
    report.critical_value = chisq_quantile(1.0 - config.level, dof);
    const auto denominators = corrections(config.test.correction, config.lags, config.length);

    report.statistics.assign(config.replications, 0.0);
    for_each_replication(config.replications, config.threads, [&](std::size_t i) {
        const auto series = generate(config.model, generator_for(config, i));
        const auto prepared = prepare_series(series, config.test);
        double stat = 0.0;
        for (std::size_t n = 0; n < config.lags.size(); ++n) {
            stat += std::norm(dft_cov(prepared.dft, config.lags[n], prepared.spectral.values)) / denominators[n];
        }
        report.statistics[i] = static_cast<double>(config.length) * stat;
    });

    report.rejections = static_cast<std::size_t>(
        std::count_if(report.statistics.begin(), report.statistics.end(),
                      [&](double s) { return s > report.critical_value; }));
    report.rejection_rate = static_cast<double>(report.rejections) / static_cast<double>(config.replications);
    report.histogram = empirical_density(report.statistics, config.bins);
    return report;
}

Histogram empirical_density(std::span<const double> statistics, std::size_t bins) {
    if (statistics.empty()) throw InvalidInputError("empirical_density: no statistics");
    if (bins < 2) throw InvalidInputError("empirical_density: need at least 2 bins");
    for (const double s : statistics) {
        if (!std::isfinite(s) || s < 0.0) throw InvalidInputError("empirical_density: statistics must be finite and >= 0");
    }
    double upper = *std::max_element(statistics.begin(), statistics.end());
    if (upper <= 0.0) upper = 1.0;

    Histogram h;
    const double width = upper / static_cast<double>(bins);
    h.edges.resize(bins + 1);
    for (std::size_t i = 0; i <= bins; ++i) h.edges[i] = width * static_cast<double>(i);
    h.edges.back() = upper;
    h.counts.assign(bins, 0);
    for (const double s : statistics) {
        const auto idx = std::min(bins - 1, static_cast<std::size_t>(s / width));
        ++h.counts[idx];
    }
    h.density.resize(bins);
    const double n = static_cast<double>(statistics.size());
    for (std::size_t i = 0; i < bins; ++i) h.density[i] = static_cast<double>(h.counts[i]) / (n * width);
    return h;
}

LagScanResult lag_scan(const McConfig& config) {
    config.validate();
    const std::size_t nlags = config.lags.size();
    const auto denominators = corrections(config.test.correction, config.lags, config.length);
    const double critical = chisq_quantile(1.0 - config.level, 2);

    // rejected[i * nlags + j]: replication i rejects at lag j.
    std::vector<unsigned char> rejected(config.replications * nlags, 0);
    for_each_replication(config.replications, config.threads, [&](std::size_t i) {
        const auto series = generate(config.model, generator_for(config, i));
        const auto prepared = prepare_series(series, config.test);
        for (std::size_t j = 0; j < nlags; ++j) {
            const double stat = static_cast<double>(config.length) *
                                std::norm(dft_cov(prepared.dft, config.lags[j], prepared.spectral.values)) /
                                denominators[j];
            rejected[i * nlags + j] = stat > critical ? 1 : 0;
        }
    });

    LagScanResult out;
    out.lags = config.lags;
    out.replications = config.replications;
    out.rejections.assign(nlags, 0);
    for (std::size_t i = 0; i < config.replications; ++i) {
        for (std::size_t j = 0; j < nlags; ++j) out.rejections[j] += rejected[i * nlags + j];
    }
    out.rejection_rates.resize(nlags);
    for (std::size_t j = 0; j < nlags; ++j) {
        out.rejection_rates[j] = static_cast<double>(out.rejections[j]) / static_cast<double>(config.replications);
    }
    return out;
}

double ks_distance(std::span<const double> samples, const std::function<double(double)>& cdf) {
    if (samples.empty()) throw InvalidInputError("ks_distance: no samples");
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double f = cdf(sorted[i]);
        d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
    }
    return d;
}

double ks_pvalue(double distance, std::size_t n) {
    const double root = std::sqrt(static_cast<double>(n));
    const double lambda = (root + 0.12 + 0.11 / root) * distance;
    if (lambda < 1e-3) return 1.0;
    double sum = 0.0;
    for (int j = 1; j <= 200; ++j) {
        const double term = std::exp(-2.0 * j * j * lambda * lambda);
        sum += (j % 2 == 1 ? 2.0 : -2.0) * term;
        if (term < 1e-16) break;
    }
    return std::clamp(sum, 0.0, 1.0);
}

double spearman_correlation(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size() || a.size() < 2) {
        throw InvalidInputError("spearman_correlation: need two samples of equal length >= 2");
    }
    const auto ra = average_ranks(a);
    const auto rb = average_ranks(b);
    const double n = static_cast<double>(a.size());
    const double ma = std::accumulate(ra.begin(), ra.end(), 0.0) / n;
    const double mb = std::accumulate(rb.begin(), rb.end(), 0.0) / n;
    double sab = 0.0, saa = 0.0, sbb = 0.0;
    for (std::size_t i = 0; i < ra.size(); ++i) {
        sab += (ra[i] - ma) * (rb[i] - mb);
        saa += (ra[i] - ma) * (ra[i] - ma);
        sbb += (rb[i] - mb) * (rb[i] - mb);
    }
    if (saa == 0.0 || sbb == 0.0) return 0.0;
    return sab / std::sqrt(saa * sbb);
}

Complex sigma_fourier(const std::function<double(double)>& sigma, int r, std::size_t grid) {
    if (grid < 64) throw InvalidInputError("sigma_fourier: grid must have at least 64 points");
    const double n = static_cast<double>(grid);
    Complex acc{};
    for (std::size_t t = 1; t <= grid; ++t) {
        // Reduce r*t mod grid before forming the angle.
        const auto rt = (static_cast<long long>(r) * static_cast<long long>(t)) % static_cast<long long>(grid);
        acc += sigma(static_cast<double>(t) / n) * std::polar(1.0, -kTwoPi * static_cast<double>(rt) / n);
    }
    return acc / n;
}

std::vector<double> integrated_spectrum(const LocalSpectrum& f, std::span<const double> omegas,
                                        std::size_t u_intervals) {
    std::vector<double> out(omegas.size());
    for (std::size_t i = 0; i < omegas.size(); ++i) {
        const double w = omegas[i];
        out[i] = trapezoid_1d([&](double u) { return f(u, w); }, {0.0, 1.0}, u_intervals);
        if (!(out[i] >= 1e-10)) {
            throw DegenerateSpectrumError("integrated spectrum " + std::to_string(out[i]) + " below 1e-10 at omega = " +
                                          std::to_string(w));
        }
    }
    return out;
}

Complex noncentrality_B(const LocalSpectrum& f, int r, const PowerGrid& grid, std::optional<std::size_t> length) {
    if (grid.u_intervals < 128 || grid.lambda_intervals < 256) {
        throw InvalidInputError("noncentrality_B: quadrature grid must be at least 128 x 256");
    }
    const std::size_t nl = grid.lambda_intervals;
    const double hl = kTwoPi / static_cast<double>(nl);
    const double shift = length ? kTwoPi * r / static_cast<double>(*length) : 0.0;

    std::vector<double> lambdas(nl + 1);
    std::vector<double> shifted(nl + 1);
    for (std::size_t j = 0; j <= nl; ++j) {
        lambdas[j] = hl * static_cast<double>(j);
        shifted[j] = lambdas[j] + shift;
    }
    const auto base = integrated_spectrum(f, lambdas, grid.u_intervals);
    const auto moved = shift == 0.0 ? base : integrated_spectrum(f, shifted, grid.u_intervals);
    std::vector<double> inv_norm(nl + 1);
    for (std::size_t j = 0; j <= nl; ++j) inv_norm[j] = 1.0 / std::sqrt(base[j] * moved[j]);

    const auto result = trapezoid_2d(
        [&](double u, double lambda) {
            const auto j = static_cast<std::size_t>(std::lround(lambda / hl));
            const auto ru = std::fmod(static_cast<double>(r) * u, 1.0);
            return f(u, lambda) * inv_norm[j] * std::polar(1.0, -kTwoPi * ru);
        },
        {0.0, 1.0}, {0.0, kTwoPi}, grid.u_intervals, nl);
    return result.value / kTwoPi;
}

PowerProfile power_profile(const ModelSpec& model, std::span<const int> lags, const PowerOptions& options) {
    if (lags.empty()) throw InvalidLagError("power_profile: at least one lag is required");
    if (options.length) validate_lags(lags, *options.length);

    PowerGrid grid = options.grid;
    if (grid.u_intervals == 0) {
        int max_lag = 0;
        for (const int r : lags) max_lag = std::max(max_lag, std::abs(r));
        grid.u_intervals = std::max<std::size_t>(128, 16 * static_cast<std::size_t>(max_lag));
        grid.u_intervals += grid.u_intervals % 2;
    }

    const auto f = local_spectrum(model);
    PowerProfile profile;
    profile.lags.assign(lags.begin(), lags.end());
    for (const int r : lags) profile.b_values.push_back(noncentrality_B(f, r, grid, options.length));
    for (const auto& b : profile.b_values) profile.mu.push_back(b.real());
    for (const auto& b : profile.b_values) profile.mu.push_back(b.imag());

    const SigmaSpec* sigma = nullptr;
    if (const auto* m = std::get_if<ModulatedNoiseModel>(&model)) sigma = &m->sigma;
    if (const auto* m = std::get_if<TvInnovationArModel>(&model)) sigma = &m->sigma;
    if (sigma) {
        std::vector<Complex> coeffs;
        for (const int r : lags) coeffs.push_back(sigma_fourier(*sigma, r, options.sigma_grid));
        profile.sigma_fourier = std::move(coeffs);
    }
    return profile;
}

}  // namespace dftstat
