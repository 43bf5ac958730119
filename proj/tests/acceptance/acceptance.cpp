// Acceptance suite: one PASS / FAIL / SKIP line per criterion.
//
// Exit status is 1 when any criterion fails. Criterion 8 reads
// soi.txt and fx.txt from $DFTSTAT_DATA_DIR and is skipped without them.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli/series_io.hpp"
#include "dftstat/dftstat.hpp"
#include "oracles.hpp"

using namespace dftstat;
using std::numbers::pi;

namespace {

enum class Status { Pass, Fail, Skip };

struct Outcome {
    Status status;
    std::string detail;
};

constexpr std::uint64_t kSeed = 1;

McConfig mc(const ModelSpec& model, std::size_t length, std::vector<int> lags, std::size_t reps) {
    McConfig c;
    c.model = model;
    c.length = length;
    c.lags = std::move(lags);
    c.level = 0.05;
    c.replications = reps;
    c.seed = kSeed;
    return c;
}

std::string fmt(double v, int digits = 4) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

bool within(double v, double lo, double hi) { return v >= lo && v <= hi; }

// Criteria 1 and 2 share the m = 10 statistics.
std::vector<double> g_null_m10;

Outcome null_calibration() {
    bool ok = true;
    std::string detail = "model1 T=512 N=1000 rate at 5%:";
    for (const int m : {1, 5, 10}) {
        const auto report = rejection_rate(mc(model_preset("model1"), 512, consecutive_lags(m), 1000));
        if (m == 10) g_null_m10 = report.statistics;
        const bool in = within(report.rejection_rate, 0.030, 0.085);
        ok = ok && in;
        detail += " m=" + std::to_string(m) + " " + fmt(report.rejection_rate, 3) + (in ? "" : "(out)");
    }
    return {ok ? Status::Pass : Status::Fail, detail + "; band [0.030, 0.085]"};
}

Outcome null_density() {
    const double d = ks_distance(g_null_m10, [](double x) { return 1.0 - chisq_sf(x, 20); });
    const double p = ks_pvalue(d, g_null_m10.size());
    double mean = 0.0;
    for (const double s : g_null_m10) mean += s / static_cast<double>(g_null_m10.size());
    return {p > 0.01 ? Status::Pass : Status::Fail,
            "KS of T_10 vs chi2_20: D=" + fmt(d) + " p=" + fmt(p, 3) + " (sample mean " + fmt(mean) +
                ", chi2_20 mean 20); need p > 0.01"};
}

Outcome strong_alternative() {
    bool ok = true;
    std::string detail = "model3 rate at 5%:";
    for (const std::size_t n : {256, 512}) {
        for (const int m : {1, 5, 10}) {
            const auto report = rejection_rate(mc(model_preset("model3"), n, consecutive_lags(m), 1000));
            const bool in = report.rejection_rate >= 0.99;
            ok = ok && in;
            detail += " T=" + std::to_string(n) + ",m=" + std::to_string(m) + " " + fmt(report.rejection_rate, 3);
        }
    }
    return {ok ? Status::Pass : Status::Fail, detail + "; need >= 0.99"};
}

Outcome moderate_alternatives() {
    struct Cell {
        const char* model;
        std::size_t length;
        int m;
        double lo;
        double hi;
    };
    const Cell cells[] = {{"model5", 256, 1, 0.37, 0.67},
                          {"model5", 512, 1, 0.70, 0.94},
                          {"model4", 512, 1, 0.90, 1.0},
                          {"model6", 512, 10, 0.85, 1.0}};
    bool ok = true;
    std::string detail;
    for (const auto& c : cells) {
        const auto report = rejection_rate(mc(model_preset(c.model), c.length, consecutive_lags(c.m), 1000));
        const bool in = within(report.rejection_rate, c.lo, c.hi);
        ok = ok && in;
        detail += std::string(detail.empty() ? "" : "; ") + c.model + " T=" + std::to_string(c.length) +
                  " m=" + std::to_string(c.m) + " " + fmt(report.rejection_rate, 3) + " in [" + fmt(c.lo, 2) +
                  ", " + fmt(c.hi, 2) + "] " + (in ? "ok" : "no");
    }
    return {ok ? Status::Pass : Status::Fail, detail};
}

Outcome lag_power_alignment() {
    std::vector<int> lags(120);
    for (int r = 1; r <= 120; ++r) lags[static_cast<std::size_t>(r - 1)] = r;
    const auto scan = lag_scan(mc(model_preset("model6"), 512, lags, 1000));
    const auto sigma = model6_sigma();
    std::vector<double> coef;
    for (const int r : lags) coef.push_back(std::abs(sigma_fourier(sigma, r, 512)));
    const double rho = spearman_correlation(scan.rejection_rates, coef);
    return {rho >= 0.5 ? Status::Pass : Status::Fail,
            "model6 T=512 lags 1..120 N=1000: Spearman(rate, |a_r|) = " + fmt(rho, 3) + "; need >= 0.5"};
}

Outcome noncentrality_oracle() {
    const std::vector<std::pair<const char*, LocalSpectrum>> constant = {
        {"white", [](double, double) { return 1 / (2 * pi); }},
        {"model1", local_spectrum(model_preset("model1"))},
        {"model2", local_spectrum(model_preset("model2"))},
        {"ar2", local_spectrum(ArmaModel{{1.5, -0.75}, {}})},
    };
    double worst = 0.0;
    for (const auto& [name, f] : constant) {
        for (const int r : {1, 2, 3, 7}) worst = std::max(worst, std::abs(noncentrality_B(f, r)));
    }
    const LocalSpectrum cosine = [](double u, double) { return (1 + std::cos(2 * pi * u)) / (2 * pi); };
    const double err = std::abs(noncentrality_B(cosine, 1) - Complex{0.5, 0.0});
    const bool ok = worst <= 1e-8 && err <= 1e-6;
    return {ok ? Status::Pass : Status::Fail,
            "max |B| over u-constant spectra " + fmt(worst, 3) + " (<= 1e-8); |B(1) - 1/2| for 1 + cos 2 pi u " +
                fmt(err, 3) + " (<= 1e-6)"};
}

Outcome numerical_kernel() {
    std::mt19937_64 gen(kSeed);
    std::normal_distribution<double> normal;
    double fft_err = 0.0;
    double parseval_err = 0.0;
    for (const std::size_t n : {15, 16, 243, 453, 512}) {
        std::vector<double> x(n);
        for (auto& v : x) v = normal(gen);
        const auto fast = dft_canonical(x);
        const auto slow = oracle::direct_dft(x);
        double scale = 0.0;
        double diff = 0.0;
        double energy = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            scale = std::max(scale, std::abs(slow[k]));
            diff = std::max(diff, std::abs(fast[k] - slow[k]));
            energy += std::norm(fast[k]);
        }
        double sumsq = 0.0;
        for (const double v : x) sumsq += v * v;
        fft_err = std::max(fft_err, diff / scale);
        parseval_err = std::max(parseval_err, std::abs(energy - sumsq / (2 * pi)) / (sumsq / (2 * pi)));
    }
    double chisq_err = 0.0;
    const std::pair<double, int> pairs[] = {{0.5, 1},  {1.0, 1},  {3.84, 1}, {0.1, 2},   {2.0, 2},
                                            {5.99, 2}, {1.0, 4},  {9.49, 4}, {2.66, 8},  {15.5, 8},
                                            {20.0, 8}, {5.0, 10}, {18.3, 10}, {10.0, 20}, {31.4, 20},
                                            {45.0, 20}, {30.0, 40}, {55.8, 40}, {0.01, 3}, {60.0, 30}};
    for (const auto& [x, k] : pairs) {
        chisq_err = std::max(chisq_err, std::abs(chisq_sf(x, k) - oracle::chisq_sf_quadrature(x, k)));
    }
    const bool ok = fft_err <= 1e-9 && parseval_err <= 1e-9 && chisq_err <= 1e-10;
    return {ok ? Status::Pass : Status::Fail, "fft vs direct rel " + fmt(fft_err, 3) + "; Parseval rel " +
                                                  fmt(parseval_err, 3) + "; chisq_sf abs " + fmt(chisq_err, 3) +
                                                  " over 20 pairs"};
}

std::optional<std::vector<double>> load(const std::filesystem::path& path) {
    if (!std::filesystem::exists(path)) return std::nullopt;
    return cli::read_series_file(path.string(), std::nullopt);
}

Outcome real_data() {
    const char* dir = std::getenv("DFTSTAT_DATA_DIR");
    if (dir == nullptr) return {Status::Skip, "DFTSTAT_DATA_DIR not set (needs soi.txt and/or fx.txt)"};
    const std::filesystem::path base(dir);
    const auto soi = load(base / "soi.txt");
    const auto fx = load(base / "fx.txt");
    if (!soi && !fx) return {Status::Skip, "no soi.txt or fx.txt in " + base.string()};

    bool ok = true;
    std::string detail;
    const auto lags = consecutive_lags(4);
    if (soi) {
        const auto r = test_statistic(*soi, lags);
        const bool in = within(r.p_value, 0.85, 0.99);
        ok = ok && in;
        detail += "SOI T=" + std::to_string(r.length) + " stat " + fmt(r.statistic) + " p " + fmt(r.p_value, 3) +
                  (in ? " ok" : " (need [0.85, 0.99])");
    } else {
        detail += "SOI skipped";
    }
    if (fx) {
        const auto x = cli::sqrt_abs_logdiff2(*fx);
        const auto report = segment_test(x, 3, lags);
        const auto& full = report.blocks.front().result;
        const auto leaves = report.at_depth(3);
        const auto& last = leaves.back()->result;
        const auto& quiet = leaves[5]->result;
        const bool full_ok = full.p_value < 0.001 && full.reject_at(0.05).value();
        const bool last_ok = last.reject_at(0.05).value();
        const bool quiet_ok = !quiet.reject_at(0.05).value();
        ok = ok && full_ok && last_ok && quiet_ok;
        detail += "; FX T=" + std::to_string(full.length) + " full p " + fmt(full.p_value, 3) +
                  (full_ok ? " ok" : " (need < 0.001)") + ", last eighth p " + fmt(last.p_value, 3) +
                  (last_ok ? " ok" : " (need reject)") + ", sixth eighth p " + fmt(quiet.p_value, 3) +
                  (quiet_ok ? " ok" : " (need no reject)");
    } else {
        detail += "; FX skipped";
    }
    return {ok ? Status::Pass : Status::Fail, detail};
}

Outcome invariance() {
    bool ok = true;
    std::string detail;

    GeneratorConfig gen;
    gen.length = 512;
    gen.seed = kSeed;
    const auto x = generate(model_preset("model2"), gen);
    const auto lags = consecutive_lags(4);
    const double base = test_statistic(x, lags).statistic;
    double scale_err = 0.0;
    for (const double c : {0.1, 7.3}) {
        std::vector<double> y(x);
        for (auto& v : y) v *= c;
        scale_err = std::max(scale_err, std::abs(test_statistic(y, lags).statistic - base));
    }
    ok = ok && scale_err <= 1e-8;
    detail += "scale |dT| " + fmt(scale_err, 3);

    std::mt19937_64 rng(kSeed);
    std::uniform_real_distribution<double> coef(-2.0, 2.0);
    double at_zero = 0.0;
    double lo = 1.0;
    double hi = 0.0;
    for (int i = 0; i < 100; ++i) {
        const std::vector<double> psi = {1.0, coef(rng), coef(rng), coef(rng)};
        at_zero = std::max(at_zero, std::abs(varphi(psi, 0.0) - 1.0));
        for (const double w : {0.05, 0.5, 1.5, 3.0}) {
            const double v = varphi(psi, w);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    ok = ok && at_zero == 0.0 && lo >= 0.0 && hi <= 1.0;
    detail += "; varphi(0) max |v-1| " + fmt(at_zero, 3) + "; varphi range [" + fmt(lo) + ", " + fmt(hi) + "]";

    int rejected = 0;
    for (const int bad : {0, 256}) {
        try {
            (void)test_statistic(x, std::vector<int>{bad});
        } catch (const InvalidLagError&) {
            ++rejected;
        }
    }
    ok = ok && rejected == 2;
    detail += "; lags {0, T/2} rejected " + std::to_string(rejected) + "/2";
    return {ok ? Status::Pass : Status::Fail, detail};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"null calibration", null_calibration},
        {"null density", null_density},
        {"strong alternative", strong_alternative},
        {"moderate alternatives", moderate_alternatives},
        {"lag-power alignment", lag_power_alignment},
        {"noncentrality oracle", noncentrality_oracle},
        {"numerical kernel", numerical_kernel},
        {"real data", real_data},
        {"invariance", invariance},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {Status::Fail, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const char* tag = o.status == Status::Pass ? "PASS" : o.status == Status::Fail ? "FAIL" : "SKIP";
        if (o.status == Status::Fail) ++failures;
        std::printf("criterion %zu [%s] %s: %s (%.1fs)\n", i + 1, tag, criteria[i].first.c_str(), o.detail.c_str(),
                    secs);
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria failed\n", failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
