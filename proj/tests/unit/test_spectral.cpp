#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "dftstat/errors.hpp"
#include "dftstat/rng.hpp"
#include "dftstat/simulate.hpp"
#include "dftstat/spectral.hpp"
#include "oracles.hpp"

using namespace dftstat;
using std::numbers::pi;

namespace {

std::vector<double> noise(std::uint64_t seed, std::uint64_t stream, std::size_t n) {
    RngStream rng(seed, stream);
    return gauss_stream(rng, n);
}

}  // namespace

TEST_CASE("kernels integrate to one on [-1/2, 1/2]") {
    for (const auto kind : {KernelKind::Daniell, KernelKind::Bartlett}) {
        const double integral = oracle::simpson([&](double x) { return kernel_value(kind, x); }, -0.5, 0.5, 2000);
        CHECK(integral == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(kernel_value(kind, 0.6) == 0.0);
        CHECK(kernel_value(kind, -0.3) == kernel_value(kind, 0.3));
    }
}

TEST_CASE("periodogram of a zero series is zero") {
    for (const double v : periodogram(std::vector<double>(32, 0.0))) CHECK(v == 0.0);
}

TEST_CASE("periodogram of a cosine has mass only at k = 3, 13") {
    std::vector<double> x(16);
    for (std::size_t t = 1; t <= 16; ++t) x[t - 1] = std::cos(2 * pi * static_cast<double>(t) * 3.0 / 16.0);
    const auto p = periodogram(x);
    const auto ref = oracle::direct_dft(x);
    for (std::size_t k = 0; k < 16; ++k) {
        CHECK(std::abs(p[k] - std::norm(ref[k])) < 1e-12);
        if (k != 3 && k != 13) CHECK(p[k] < 1e-24);
    }
}

TEST_CASE("white-noise periodogram averages 1/(2 pi)") {
    double total = 0.0;
    for (std::uint64_t rep = 0; rep < 50; ++rep) {
        const auto p = periodogram(noise(5, rep, 4096));
        total += std::accumulate(p.begin(), p.end(), 0.0) / 4096.0;
    }
    CHECK(std::abs(total / 50.0 - 1.0 / (2 * pi)) < 0.01);
}

TEST_CASE("bandwidth window") {
    CHECK(KernelSpec{KernelKind::Daniell, default_bandwidth(512)}.admissible_for(512));
    CHECK_FALSE(KernelSpec{KernelKind::Daniell, 0.01}.admissible_for(512));
    CHECK_FALSE(KernelSpec{KernelKind::Daniell, 0.3}.admissible_for(512));
    CHECK(default_bandwidth(512) == doctest::Approx(0.125));
}

TEST_CASE("bandwidth too small") {
    const std::vector<double> p(64, 1.0);
    CHECK_THROWS_AS(smooth_spectral(p, {KernelKind::Daniell, 2.0 / 64.0}), BandwidthTooSmallError);
    CHECK_NOTHROW(smooth_spectral(p, {KernelKind::Daniell, 3.0 / 64.0}));
    CHECK_THROWS_AS(smooth_spectral(p, {KernelKind::Daniell, 0.6}), InvalidInputError);
}

TEST_CASE("out-of-window bandwidth warns without failing") {
    const std::vector<double> p(1024, 1.0);
    CHECK(smooth_spectral(p, {KernelKind::Daniell, 0.4}).bandwidth_warning);
    CHECK_FALSE(smooth_spectral(p, {KernelKind::Daniell, default_bandwidth(1024)}).bandwidth_warning);
}

TEST_CASE("smoothing a constant returns the constant for every kernel and bandwidth") {
    for (const auto kind : {KernelKind::Daniell, KernelKind::Bartlett}) {
        for (const double b : {0.01, 0.05, 0.125, 0.3, 0.49}) {
            const std::vector<double> p(512, 3.7);
            const auto est = smooth_spectral(p, {kind, b});
            for (const double v : est.values) REQUIRE(std::abs(v - 3.7) < 1e-12);
        }
    }
}

TEST_CASE("ridge floors the estimate and scales with the data") {
    auto p = periodogram(noise(8, 0, 256));
    std::fill(p.begin() + 20, p.begin() + 120, 0.0);
    const auto est = smooth_spectral(p, {KernelKind::Daniell, 0.05}, 0.01);
    const double mean = std::accumulate(p.begin(), p.end(), 0.0) / 256.0;
    CHECK(est.ridge == doctest::Approx(0.01 * mean));
    for (const double v : est.values) CHECK(v >= est.ridge);
    CHECK(*std::min_element(est.values.begin(), est.values.end()) == est.ridge);

    std::vector<double> scaled(p);
    for (auto& v : scaled) v *= 42.0;
    const auto est2 = smooth_spectral(scaled, {KernelKind::Daniell, 0.05}, 0.01);
    for (std::size_t k = 0; k < p.size(); ++k) CHECK(est2.values[k] == doctest::Approx(42.0 * est.values[k]));
}

TEST_CASE("zero periodogram is degenerate") {
    CHECK_THROWS_AS(smooth_spectral(std::vector<double>(64, 0.0), {KernelKind::Daniell, 0.1}), DegenerateSpectrumError);
}

TEST_CASE("flat kernel is local and circular") {
    const std::size_t n = 200;
    const double b = 0.1;  // bT = 20, half-width 10
    std::vector<double> p(n, 1.0);
    p[0] = 101.0;
    const auto est = smooth_spectral(p, {KernelKind::Daniell, b}, 0.0);
    const auto half = static_cast<std::size_t>(std::ceil(b * n / 2));
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t dist = std::min(k, n - k);
        if (dist > half) {
            CHECK(est.values[k] == doctest::Approx(1.0));
        } else {
            CHECK(est.values[k] > 1.0);
        }
    }
    // The spike's influence wraps symmetrically around index 0.
    CHECK(est.values[3] == doctest::Approx(est.values[n - 3]));
}

TEST_CASE("white noise estimate is flat on average") {
    const std::size_t n = 1024;
    const KernelSpec kernel{KernelKind::Daniell, default_bandwidth(n)};
    std::vector<double> avg(n, 0.0);
    for (std::uint64_t rep = 0; rep < 100; ++rep) {
        const auto est = smooth_spectral(periodogram(noise(17, rep, n)), kernel);
        for (std::size_t k = 0; k < n; ++k) avg[k] += est.values[k] / 100.0;
    }
    for (const double v : avg) REQUIRE(std::abs(v - 1 / (2 * pi)) < 0.1 / (2 * pi));
}

TEST_CASE("AR(1) estimate tracks the closed-form spectrum") {
    const std::size_t n = 2048;
    const KernelSpec kernel{KernelKind::Daniell, default_bandwidth(n)};
    const auto model = model_preset("model1");
    double mean_rmse = 0.0;
    for (std::uint64_t rep = 0; rep < 100; ++rep) {
        GeneratorConfig gen;
        gen.length = n;
        gen.seed = 23;
        gen.stream_id = rep;
        const auto est = smooth_spectral(periodogram(generate(model, gen)), kernel);
        double sq = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            const double f = oracle::ar1_spectrum(0.8, 2 * pi * static_cast<double>(k) / static_cast<double>(n));
            sq += std::pow((est.values[k] - f) / f, 2);
        }
        mean_rmse += std::sqrt(sq / static_cast<double>(n)) / 100.0;
    }
    MESSAGE("mean relative RMSE = " << mean_rmse);
    CHECK(mean_rmse <= 0.15);
}
