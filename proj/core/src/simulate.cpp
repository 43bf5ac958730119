#include "dftstat/simulate.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <sstream>

#include "dftstat/errors.hpp"
#include "dftstat/rng.hpp"

namespace dftstat {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void check_coefficients(std::span<const double> coeffs, const char* what) {
    for (const double c : coeffs) {
        if (!std::isfinite(c)) throw InvalidInputError(std::string(what) + ": non-finite coefficient");
    }
}

void check_stable(std::span<const double> ar, bool allow_unstable, const std::string& where) {
    check_coefficients(ar, "AR");
    if (allow_unstable) return;
    const double modulus = ar_min_root_modulus(ar);
    if (!(modulus > 1.0)) {
        std::ostringstream msg;
        msg << where << ": AR polynomial has a root of modulus " << modulus
            << " (must lie outside the unit circle)";
        throw StabilityError(msg.str(), modulus);
    }
}

std::size_t ma_order(const ModelSpec& spec) {
    if (const auto* arma = std::get_if<ArmaModel>(&spec)) return arma->ma.size();
    return 0;
}

}  // namespace

// ---------------------------------------------------------------------------
// sigma(u)
// ---------------------------------------------------------------------------

PiecewiseSigma PiecewiseSigma::equal_width(std::vector<double> values) {
    PiecewiseSigma out;
    const std::size_t n = values.size();
    for (std::size_t i = 1; i < n; ++i) out.edges.push_back(static_cast<double>(i) / static_cast<double>(n));
    out.values = std::move(values);
    return out;
}

double SigmaSpec::operator()(double u) const {
    return std::visit(Overloaded{[](const ConstantSigma& c) { return c.value; },
                                 [u](const PiecewiseSigma& p) {
                                     const auto it = std::upper_bound(p.edges.begin(), p.edges.end(), u);
                                     return p.values[static_cast<std::size_t>(it - p.edges.begin())];
                                 },
                                 [u](const HarmonicSigma& h) {
                                     const double arg = kTwoPi * h.cycles * u;
                                     return h.offset + h.sin_coef * std::sin(arg) + h.cos_coef * std::cos(arg);
                                 }},
                      shape);
}

double SigmaSpec::at_time(std::size_t t, std::size_t length) const {
    const double scale = reference_length.value_or(static_cast<double>(length));
    return (*this)(static_cast<double>(t) / scale);
}

void SigmaSpec::validate() const {
    if (reference_length && !(*reference_length > 0.0)) {
        throw InvalidInputError("sigma: reference length must be positive");
    }
    std::visit(Overloaded{[](const ConstantSigma& c) {
                              if (!(c.value > 0.0) || !std::isfinite(c.value)) {
                                  throw InvalidInputError("sigma: constant must be positive");
                              }
                          },
                          [](const PiecewiseSigma& p) {
                              if (p.values.empty() || p.edges.size() + 1 != p.values.size()) {
                                  throw InvalidInputError("sigma: piecewise needs values.size() == edges.size() + 1");
                              }
                              double prev = 0.0;
                              for (const double e : p.edges) {
                                  if (!(e > prev && e < 1.0)) {
                                      throw InvalidInputError("sigma: edges must increase strictly inside (0, 1)");
                                  }
                                  prev = e;
                              }
                              for (const double v : p.values) {
                                  if (!(v > 0.0) || !std::isfinite(v)) {
                                      throw InvalidInputError("sigma: piecewise values must be positive");
                                  }
                              }
                          },
                          [](const HarmonicSigma& h) {
                              // Sign changes are allowed (only sigma^2 enters the
                              // spectrum); an identically zero scale is not.
                              for (const double c : {h.offset, h.sin_coef, h.cos_coef, h.cycles}) {
                                  if (!std::isfinite(c)) throw InvalidInputError("sigma: non-finite harmonic term");
                              }
                              if (h.offset == 0.0 && h.sin_coef == 0.0 && h.cos_coef == 0.0) {
                                  throw InvalidInputError("sigma: harmonic scale is identically zero");
                              }
                          }},
               shape);
}

// ---------------------------------------------------------------------------
// Presets
// ---------------------------------------------------------------------------

std::string_view family_name(const ModelSpec& spec) {
    return std::visit(Overloaded{[](const ArmaModel&) { return std::string_view("arma"); },
                                 [](const ChangepointArModel&) { return std::string_view("changepoint_ar"); },
                                 [](const TvInnovationArModel&) { return std::string_view("tv_innovation_ar"); },
                                 [](const ModulatedNoiseModel&) { return std::string_view("modulated_noise"); }},
                      spec);
}

std::vector<std::string> preset_names() { return {"model1", "model2", "model3", "model4", "model5", "model6"}; }

SigmaSpec model6_sigma() {
    // Step [7/20, 8/20) is not assigned a level in the source table; it keeps
    // the level of the preceding step (3).
    return SigmaSpec{PiecewiseSigma::equal_width({3, 3, 3, 3, 3, 1, 3, 3, 2, 2, 2, 2, 3, 2, 1, 3, 1, 3, 1, 2}),
                     std::nullopt};
}

ModelSpec model_preset(std::string_view name) {
    if (name == "model1") return ArmaModel{{0.8}, {}};
    if (name == "model2") return ArmaModel{{1.0, -0.7}, {0.3, 0.0, 2.0}};
    if (name == "model3") return ChangepointArModel{{{0.75, {1.5, -0.75}}, {1.0, {0.8}}}};
    if (name == "model4") {
        return TvInnovationArModel{{0.8}, SigmaSpec{HarmonicSigma{0.5, 1.0, 0.3, 1.0}, 512.0}};
    }
    if (name == "model5") return ChangepointArModel{{{0.5, {0.8}}, {1.0, {0.6}}}};
    if (name == "model6") return ModulatedNoiseModel{model6_sigma()};

    std::string known;
    for (const auto& n : preset_names()) known += (known.empty() ? "" : ", ") + n;
    throw InvalidInputError("unknown model '" + std::string(name) + "'; presets: " + known);
}

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

double ar_min_root_modulus(std::span<const double> ar) {
    std::size_t p = ar.size();
    while (p > 0 && ar[p - 1] == 0.0) --p;
    if (p == 0) return std::numeric_limits<double>::infinity();

    // Roots of 1 - sum a_i z^i are reciprocals of the companion eigenvalues.
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(p));
    for (std::size_t i = 0; i < p; ++i) companion(0, static_cast<Eigen::Index>(i)) = ar[i];
    for (std::size_t i = 1; i < p; ++i) companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 1.0;
    const Eigen::VectorXcd eig = Eigen::EigenSolver<Eigen::MatrixXd>(companion, false).eigenvalues();
    double largest = 0.0;
    for (Eigen::Index i = 0; i < eig.size(); ++i) largest = std::max(largest, std::abs(eig(i)));
    return largest == 0.0 ? std::numeric_limits<double>::infinity() : 1.0 / largest;
}

void validate_model(const ModelSpec& spec, bool allow_unstable) {
    std::visit(Overloaded{[&](const ArmaModel& m) {
                              check_stable(m.ar, allow_unstable, "arma");
                              check_coefficients(m.ma, "MA");
                          },
                          [&](const ChangepointArModel& m) {
                              if (m.segments.empty()) throw InvalidInputError("changepoint_ar: no segments");
                              double prev = 0.0;
                              for (std::size_t i = 0; i < m.segments.size(); ++i) {
                                  const auto& seg = m.segments[i];
                                  if (!(seg.end_fraction > prev && seg.end_fraction <= 1.0)) {
                                      throw InvalidInputError(
                                          "changepoint_ar: segment fractions must increase strictly in (0, 1]");
                                  }
                                  prev = seg.end_fraction;
                                  check_stable(seg.ar, allow_unstable, "changepoint_ar segment " + std::to_string(i));
                              }
                              if (prev != 1.0) throw InvalidInputError("changepoint_ar: last segment must end at 1");
                          },
                          [&](const TvInnovationArModel& m) {
                              check_stable(m.ar, allow_unstable, "tv_innovation_ar");
                              m.sigma.validate();
                          },
                          [](const ModulatedNoiseModel& m) { m.sigma.validate(); }},
               spec);
}

// ---------------------------------------------------------------------------
// Generation
// ---------------------------------------------------------------------------

std::size_t innovations_needed(const ModelSpec& spec, const GeneratorConfig& config) {
    return config.burn_in + config.length + ma_order(spec);
}

std::vector<double> generate_from_innovations(const ModelSpec& spec, const GeneratorConfig& config,
                                              std::span<const double> innovations) {
    if (config.length < 1) throw InvalidInputError("generate: length must be >= 1");
    validate_model(spec, config.allow_unstable);
    const std::size_t needed = innovations_needed(spec, config);
    if (innovations.size() != needed) {
        throw InvalidInputError("generate: expected " + std::to_string(needed) + " innovations, got " +
                                std::to_string(innovations.size()));
    }

    const std::size_t burn = config.burn_in;
    const std::size_t total = burn + config.length;
    const std::size_t q = ma_order(spec);
    std::vector<double> x(total, 0.0);

    // Observation time t (1-based) of internal step s; burn-in steps map to t = 1.
    auto obs_time = [&](std::size_t s) { return s < burn ? std::size_t{1} : s - burn + 1; };
    auto ar_step = [&](std::span<const double> ar, std::size_t s) {
        double acc = 0.0;
        for (std::size_t i = 0; i < ar.size() && i < s; ++i) acc += ar[i] * x[s - 1 - i];
        return acc;
    };

    std::visit(Overloaded{[&](const ArmaModel& m) {
                              for (std::size_t s = 0; s < total; ++s) {
                                  double shock = innovations[s + q];
                                  for (std::size_t j = 0; j < q; ++j) shock += m.ma[j] * innovations[s + q - 1 - j];
                                  x[s] = ar_step(m.ar, s) + shock;
                              }
                          },
                          [&](const ChangepointArModel& m) {
                              std::vector<std::size_t> bounds;
                              for (const auto& seg : m.segments) {
                                  bounds.push_back(static_cast<std::size_t>(
                                      std::floor(seg.end_fraction * static_cast<double>(config.length))));
                              }
                              bounds.back() = config.length;
                              std::size_t current = 0;
                              for (std::size_t s = 0; s < total; ++s) {
                                  const std::size_t t = obs_time(s);
                                  while (t > bounds[current]) ++current;
                                  x[s] = ar_step(m.segments[current].ar, s) + innovations[s];
                              }
                          },
                          [&](const TvInnovationArModel& m) {
                              for (std::size_t s = 0; s < total; ++s) {
                                  x[s] = ar_step(m.ar, s) + m.sigma.at_time(obs_time(s), config.length) * innovations[s];
                              }
                          },
                          [&](const ModulatedNoiseModel& m) {
                              for (std::size_t s = burn; s < total; ++s) {
                                  x[s] = m.sigma.at_time(obs_time(s), config.length) * innovations[s];
                              }
                          }},
               spec);

    return {x.begin() + static_cast<std::ptrdiff_t>(burn), x.end()};
}

std::vector<double> generate(const ModelSpec& spec, const GeneratorConfig& config) {
    // Observation-period innovations are drawn first and the burn-in ones
    // after them, so changing burn_in leaves the observed shocks unchanged.
    RngStream rng(config.seed, config.stream_id);
    const std::size_t needed = innovations_needed(spec, config);
    const auto main = gauss_stream(rng, needed - config.burn_in);
    const auto burn = gauss_stream(rng, config.burn_in);
    std::vector<double> innovations;
    innovations.reserve(needed);
    innovations.insert(innovations.end(), burn.begin(), burn.end());
    innovations.insert(innovations.end(), main.begin(), main.end());
    return generate_from_innovations(spec, config, innovations);
}

// ---------------------------------------------------------------------------
// Spectra
// ---------------------------------------------------------------------------

double arma_spectrum(std::span<const double> ar, std::span<const double> ma, double omega) {
    std::complex<double> num{1.0, 0.0};
    for (std::size_t j = 0; j < ma.size(); ++j) num += ma[j] * std::polar(1.0, omega * static_cast<double>(j + 1));
    std::complex<double> den{1.0, 0.0};
    for (std::size_t i = 0; i < ar.size(); ++i) den -= ar[i] * std::polar(1.0, omega * static_cast<double>(i + 1));
    return std::norm(num) / std::norm(den) / kTwoPi;
}

LocalSpectrum local_spectrum(const ModelSpec& spec) {
    validate_model(spec, true);
    return std::visit(
        Overloaded{[](const ArmaModel& m) -> LocalSpectrum {
                       return [m](double, double w) { return arma_spectrum(m.ar, m.ma, w); };
                   },
                   [](const ChangepointArModel& m) -> LocalSpectrum {
                       return [m](double u, double w) {
                           for (const auto& seg : m.segments) {
                               if (u <= seg.end_fraction) return arma_spectrum(seg.ar, {}, w);
                           }
                           return arma_spectrum(m.segments.back().ar, {}, w);
                       };
                   },
                   [](const TvInnovationArModel& m) -> LocalSpectrum {
                       return [m](double u, double w) {
                           const double s = m.sigma(u);
                           return s * s * arma_spectrum(m.ar, {}, w);
                       };
                   },
                   [](const ModulatedNoiseModel& m) -> LocalSpectrum {
                       return [m](double u, double) {
                           const double s = m.sigma(u);
                           return s * s / kTwoPi;
                       };
                   }},
        spec);
}

}  // namespace dftstat
