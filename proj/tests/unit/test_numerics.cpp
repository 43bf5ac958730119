#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "dftstat/chisq.hpp"
#include "dftstat/errors.hpp"
#include "dftstat/fft.hpp"
#include "dftstat/quadrature.hpp"
#include "dftstat/rng.hpp"
#include "oracles.hpp"

using namespace dftstat;
using std::numbers::pi;

namespace {

std::vector<double> random_series(std::uint64_t seed, std::size_t n) {
    RngStream rng(seed, 0);
    return gauss_stream(rng, n);
}

double max_rel_diff(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    double scale = 0.0, diff = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        scale = std::max(scale, std::abs(b[i]));
        diff = std::max(diff, std::abs(a[i] - b[i]));
    }
    return diff / scale;
}

}  // namespace

TEST_SUITE("numerics.dft") {
    TEST_CASE("zero series transforms to zero") {
        const std::vector<double> zeros(16, 0.0);
        for (const auto& z : dft_canonical(zeros)) CHECK(std::abs(z) == 0.0);
    }

    TEST_CASE("pure cosine concentrates at k and T-k") {
        std::vector<double> x(16);
        for (std::size_t t = 1; t <= 16; ++t) x[t - 1] = std::cos(2 * pi * static_cast<double>(t) * 3.0 / 16.0);
        const auto j = dft_canonical(x);
        const auto ref = oracle::direct_dft(x);
        for (std::size_t k = 0; k < 16; ++k) {
            if (k == 3 || k == 13) {
                // 16 / 2 / sqrt(2 pi 16): the cosine splits evenly between +-k.
                CHECK(std::abs(j[k]) == doctest::Approx(8.0 / std::sqrt(2 * pi * 16)).epsilon(1e-12));
                CHECK(std::abs(j[k] - ref[k]) < 1e-12);
            } else {
                CHECK(std::abs(j[k]) < 1e-12);
            }
        }
    }

    TEST_CASE("real input is conjugate symmetric") {
        const auto x = random_series(3, 8);
        const auto j = dft_canonical(x);
        for (std::size_t k = 1; k < 8; ++k) CHECK(std::abs(j[8 - k] - std::conj(j[k])) < 1e-13);
    }

    TEST_CASE("fft matches the direct sum for prime and composite lengths") {
        for (const std::size_t n : {2u, 3u, 7u, 15u, 16u, 17u, 97u, 243u, 256u, 453u, 512u, 1000u}) {
            const auto x = random_series(n, n);
            CHECK_MESSAGE(max_rel_diff(dft_canonical(x), oracle::direct_dft(x)) < 1e-9, "T = " << n);
        }
    }

    TEST_CASE("Parseval over random series") {
        for (const std::size_t n : {16u, 64u, 257u}) {
            for (std::uint64_t rep = 0; rep < 100; ++rep) {
                const auto x = random_series(1000 * n + rep, n);
                const auto j = dft_canonical(x);
                double lhs = 0.0, rhs = 0.0;
                for (const auto& z : j) lhs += std::norm(z);
                for (const double v : x) rhs += v * v;
                rhs /= 2 * pi;
                REQUIRE(std::abs(lhs - rhs) <= 1e-9 * rhs);
            }
        }
    }

    TEST_CASE("linearity") {
        const auto x = random_series(11, 100);
        const auto y = random_series(12, 100);
        std::vector<double> z(100);
        for (std::size_t i = 0; i < 100; ++i) z[i] = 2.5 * x[i] - 0.75 * y[i];
        const auto jx = dft_canonical(x), jy = dft_canonical(y), jz = dft_canonical(z);
        for (std::size_t k = 0; k < 100; ++k) CHECK(std::abs(jz[k] - (2.5 * jx[k] - 0.75 * jy[k])) < 1e-10);
    }

    TEST_CASE("short input is rejected") {
        CHECK_THROWS_AS(dft_canonical(std::vector<double>{}), InvalidInputError);
        CHECK_THROWS_AS(dft_canonical(std::vector<double>{1.0}), InvalidInputError);
    }
}

TEST_SUITE("numerics.chisq") {
    TEST_CASE("survival at zero is one") { CHECK(chisq_sf(0.0, 8) == 1.0); }

    TEST_CASE("chi^2_8 at 2.66 has survival near 0.95") {
        // Hand evaluation: exp(-1.33) * (1 + 1.33 + 1.33^2/2 + 1.33^3/6) = 0.95400...
        const double expected = std::exp(-1.33) * (1 + 1.33 + 1.33 * 1.33 / 2 + 1.33 * 1.33 * 1.33 / 6);
        CHECK(chisq_sf(2.66, 8) == doctest::Approx(expected).epsilon(1e-12));
        CHECK(chisq_sf(2.66, 8) == doctest::Approx(0.95).epsilon(0.01));
    }

    TEST_CASE("chi^2_2 upper 5% point") {
        const double x = -2.0 * std::log(0.05);  // 5.991464547...
        CHECK(std::abs(chisq_sf(x, 2) - 0.05) < 1e-12);
        CHECK(std::abs(oracle::chisq_sf_quadrature(x, 2) - 0.05) < 1e-10);
    }

    TEST_CASE("agrees with the quadrature oracle") {
        for (const int dof : {1, 2, 3, 8, 20, 41}) {
            for (const double x : {0.01, 0.5, 2.0, 7.5, 20.0, 45.0}) {
                CHECK_MESSAGE(std::abs(chisq_sf(x, dof) - oracle::chisq_sf_quadrature(x, dof)) <= 1e-10,
                              "x = " << x << ", dof = " << dof);
            }
        }
    }

    TEST_CASE("strictly decreasing in x") {
        for (const int dof : {2, 8, 20}) {
            double prev = 1.0;
            for (double x = 0.25; x < 80.0; x += 0.25) {
                const double s = chisq_sf(x, dof);
                REQUIRE(s < prev);
                prev = s;
            }
        }
    }

    TEST_CASE("quantile round trip") {
        CHECK(chisq_quantile(0.0, 5) == 0.0);
        for (const int dof : {2, 8, 20}) {
            for (const double p : {0.5, 0.9, 0.95, 0.99}) {
                CHECK(std::abs(chisq_sf(chisq_quantile(p, dof), dof) - (1 - p)) < 1e-9);
            }
        }
    }

    TEST_CASE("chi^2_20 95% quantile") {
        // Bisection on the independent quadrature survival function.
        double lo = 20.0, hi = 50.0;
        for (int i = 0; i < 60; ++i) {
            const double mid = 0.5 * (lo + hi);
            (oracle::chisq_sf_quadrature(mid, 20) > 0.05 ? lo : hi) = mid;
        }
        CHECK(chisq_quantile(0.95, 20) == doctest::Approx(lo).epsilon(1e-9));
        CHECK(chisq_quantile(0.95, 20) == doctest::Approx(31.410).epsilon(1e-4));
    }

    TEST_CASE("quantile strictly increasing in p") {
        double prev = -1.0;
        for (double p = 0.0; p < 0.999; p += 0.01) {
            const double q = chisq_quantile(p, 6);
            REQUIRE(q > prev);
            prev = q;
        }
    }

    TEST_CASE("invalid arguments") {
        CHECK_THROWS_AS(chisq_sf(-1.0, 2), InvalidInputError);
        CHECK_THROWS_AS(chisq_sf(1.0, 0), InvalidInputError);
        CHECK_THROWS_AS(chisq_quantile(1.0, 2), InvalidInputError);
        CHECK_THROWS_AS(chisq_quantile(-0.1, 2), InvalidInputError);
    }
}

TEST_SUITE("numerics.rng") {
    TEST_CASE("Philox4x32-10 known answers") {
        CHECK(RngStream::philox_block({0, 0, 0, 0}, {0, 0}) ==
              std::array<std::uint32_t, 4>{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u});
        CHECK(RngStream::philox_block({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
                                      {0xffffffffu, 0xffffffffu}) ==
              std::array<std::uint32_t, 4>{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu});
        CHECK(RngStream::philox_block({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
                                      {0xa4093822u, 0x299f31d0u}) ==
              std::array<std::uint32_t, 4>{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u});
    }

    TEST_CASE("same seed and stream reproduce the sequence") {
        RngStream a(42, 7), b(42, 7);
        CHECK(gauss_stream(a, 1000) == gauss_stream(b, 1000));
    }

    TEST_CASE("different streams differ") {
        RngStream a(42, 7), b(42, 8);
        CHECK(gauss_stream(a, 16) != gauss_stream(b, 16));
    }

    TEST_CASE("moments of a long stream") {
        RngStream rng(2024, 0);
        const auto z = gauss_stream(rng, 1'000'000);
        const double mean = std::accumulate(z.begin(), z.end(), 0.0) / 1e6;
        double var = 0.0;
        for (const double v : z) var += (v - mean) * (v - mean);
        var /= 1e6 - 1;
        CHECK(std::abs(mean) < 0.005);
        CHECK(std::abs(var - 1.0) < 0.01);
    }

    TEST_CASE("paired streams are uncorrelated") {
        RngStream a(99, 0), b(99, 1);
        const auto x = gauss_stream(a, 1'000'000);
        const auto y = gauss_stream(b, 1'000'000);
        double sxy = 0, sxx = 0, syy = 0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            sxy += x[i] * y[i];
            sxx += x[i] * x[i];
            syy += y[i] * y[i];
        }
        CHECK(std::abs(sxy / std::sqrt(sxx * syy)) < 0.005);
    }

    TEST_CASE("uniform stays inside the open interval") {
        RngStream rng(0, 0);
        for (int i = 0; i < 100000; ++i) {
            const double u = rng.uniform();
            REQUIRE(u > 0.0);
            REQUIRE(u < 1.0);
        }
    }
}

TEST_SUITE("numerics.quadrature") {
    TEST_CASE("constant over the strip") {
        const auto r = trapezoid_2d([](double, double) { return 1.0; }, {0, 1}, {0, 2 * pi}, 16, 16);
        CHECK(r.value == doctest::Approx(2 * pi).epsilon(1e-14));
        CHECK(r.error_estimate < 1e-12);
    }

    TEST_CASE("full period of cos(2 pi u) cancels") {
        const auto r = trapezoid_2d([](double u, double) { return std::cos(2 * pi * u); }, {0, 1}, {0, 2 * pi}, 64, 64);
        CHECK(std::abs(r.value) < 1e-10);
    }

    TEST_CASE("u sin^2(w) integrates to pi/2") {
        // int_0^1 u du = 1/2, int_0^{2 pi} sin^2 = pi.
        const auto r = trapezoid_2d([](double u, double w) { return u * std::sin(w) * std::sin(w); }, {0, 1},
                                    {0, 2 * pi}, 64, 64);
        CHECK(r.value == doctest::Approx(pi / 2).epsilon(1e-12));
    }

    TEST_CASE("complex integrand and refinement") {
        auto f = [](double u, double w) { return std::exp(-u) * std::polar(1.0, std::sin(w)); };
        const auto coarse = trapezoid_2d(f, {0, 1}, {0, 2 * pi}, 64, 64);
        const auto fine = trapezoid_2d(f, {0, 1}, {0, 2 * pi}, 128, 128);
        CHECK(std::abs(coarse.value - fine.value) <= 4 * coarse.error_estimate + 1e-14);
    }

    TEST_CASE("non-finite integrand reports its location") {
        auto f = [](double u, double) { return u > 0.5 ? std::numeric_limits<double>::infinity() : 1.0; };
        CHECK_THROWS_WITH_AS(trapezoid_2d(f, {0, 1}, {0, 1}, 16, 16), doctest::Contains("non-finite"),
                             NumericalError);
    }

    TEST_CASE("grid too small") {
        CHECK_THROWS_AS(trapezoid_2d([](double, double) { return 1.0; }, {0, 1}, {0, 1}, 8, 16), InvalidInputError);
    }
}
