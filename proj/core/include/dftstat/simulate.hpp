#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace dftstat {

// ---------------------------------------------------------------------------
// Time-varying scale functions sigma(u), u in [0, 1]
// ---------------------------------------------------------------------------

struct ConstantSigma {
    double value = 1.0;
};

/// Left-closed steps: values[i] on [edges[i-1], edges[i]), the last step
/// closed at u = 1. edges has values.size() - 1 interior breakpoints.
struct PiecewiseSigma {
    std::vector<double> edges;
    std::vector<double> values;

    /// values.size() equal-width steps on [0, 1].
    static PiecewiseSigma equal_width(std::vector<double> values);
};

/// offset + sin_coef * sin(2 pi cycles u) + cos_coef * cos(2 pi cycles u).
struct HarmonicSigma {
    double offset = 1.0;
    double sin_coef = 0.0;
    double cos_coef = 0.0;
    double cycles = 1.0;
};

struct SigmaSpec {
    std::variant<ConstantSigma, PiecewiseSigma, HarmonicSigma> shape = ConstantSigma{};
    /// When set, observation t maps to u = t / reference_length regardless of
    /// the series length; otherwise u = t / T.
    std::optional<double> reference_length;

    [[nodiscard]] double operator()(double u) const;
    [[nodiscard]] double at_time(std::size_t t, std::size_t length) const;
    void validate() const;
};

// ---------------------------------------------------------------------------
// Model families
// ---------------------------------------------------------------------------

/// X_t = sum_i ar_i X_{t-i} + e_t + sum_j ma_j e_{t-j}.
struct ArmaModel {
    std::vector<double> ar;
    std::vector<double> ma;
};

struct ArSegment {
    double end_fraction;  ///< segment covers t <= floor(end_fraction * T)
    std::vector<double> ar;
};

/// Piecewise-constant AR coefficients; the recursion carries its history
/// across each switch.
struct ChangepointArModel {
    std::vector<ArSegment> segments;
};

/// X_t = sum_i ar_i X_{t-i} + sigma_t e_t.
struct TvInnovationArModel {
    std::vector<double> ar;
    SigmaSpec sigma;
};

/// X_t = sigma(t/T) e_t.
struct ModulatedNoiseModel {
    SigmaSpec sigma;
};

using ModelSpec = std::variant<ArmaModel, ChangepointArModel, TvInnovationArModel, ModulatedNoiseModel>;

std::string_view family_name(const ModelSpec& spec);

/// Names accepted by model_preset: "model1" .. "model6".
std::vector<std::string> preset_names();

/// Benchmark processes. model2 uses AR polynomial 1 - z + 0.7 z^2 (the printed
/// 1 - z - 0.7 z^2 is explosive); model3 uses AR(2) 1.5, -0.75 before 0.75T;
/// model4 keeps the fixed 512 time scale in sigma_t.
ModelSpec model_preset(std::string_view name);

/// Model 6's step function (twenty steps of width 1/20).
SigmaSpec model6_sigma();

// ---------------------------------------------------------------------------
// Generation
// ---------------------------------------------------------------------------

struct GeneratorConfig {
    std::size_t length = 512;
    std::size_t burn_in = 500;
    std::uint64_t seed = 0;
    std::uint64_t stream_id = 0;
    bool allow_unstable = false;
};

/// Smallest modulus among the roots of 1 - sum_i ar_i z^i (infinity when the
/// polynomial is constant). Stationary iff > 1.
double ar_min_root_modulus(std::span<const double> ar);

/// Throws InvalidInputError for malformed specs and StabilityError for an AR
/// polynomial with a root on or inside the unit circle.
void validate_model(const ModelSpec& spec, bool allow_unstable = false);

/// Number of standard normal innovations generate() consumes.
std::size_t innovations_needed(const ModelSpec& spec, const GeneratorConfig& config);

/// Deterministic core of generate(): filters the supplied innovations, given
/// in chronological order (burn-in first, MA pre-sample included).
std::vector<double> generate_from_innovations(const ModelSpec& spec, const GeneratorConfig& config,
                                              std::span<const double> innovations);

/// Length-T realization driven by the (seed, stream_id) Gaussian stream. The
/// stream's first T + q draws are the observation-period innovations; the
/// burn-in draws follow them.
std::vector<double> generate(const ModelSpec& spec, const GeneratorConfig& config);

// ---------------------------------------------------------------------------
// Spectra
// ---------------------------------------------------------------------------

/// (2 pi)^{-1} |1 + sum ma_j e^{ijw}|^2 / |1 - sum ar_i e^{iiw}|^2.
double arma_spectrum(std::span<const double> ar, std::span<const double> ma, double omega);

using LocalSpectrum = std::function<double(double u, double omega)>;

/// Time-varying spectral density f(u, w) of a model family. For scale
/// models u is sigma's own argument.
LocalSpectrum local_spectrum(const ModelSpec& spec);

}  // namespace dftstat
