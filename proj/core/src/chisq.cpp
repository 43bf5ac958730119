#include "dftstat/chisq.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "dftstat/errors.hpp"

namespace dftstat {

namespace {

constexpr double kEps = 1e-16;
constexpr int kMaxIter = 10000;

// Power series, accurate for x < a + 1.
double lower_series(double a, double x) {
    double term = 1.0 / a;
    double sum = term;
    for (int n = 1; n < kMaxIter; ++n) {
        term *= x / (a + n);
        sum += term;
        if (std::abs(term) < std::abs(sum) * kEps) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Continued fraction for Q (modified Lentz), accurate for x >= a + 1.
double upper_fraction(double a, double x) {
    constexpr double tiny = std::numeric_limits<double>::min() / kEps;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < kMaxIter; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < kEps) break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

void check_gamma_args(double a, double x) {
    if (!(a > 0.0) || !(x >= 0.0)) {
        throw InvalidInputError("incomplete gamma: need a > 0 and x >= 0");
    }
}

}  // namespace

double gamma_p(double a, double x) {
    check_gamma_args(a, x);
    if (x == 0.0) return 0.0;
    if (std::isinf(x)) return 1.0;
    return x < a + 1.0 ? lower_series(a, x) : 1.0 - upper_fraction(a, x);
}

double gamma_q(double a, double x) {
    check_gamma_args(a, x);
    if (x == 0.0) return 1.0;
    if (std::isinf(x)) return 0.0;
    return x < a + 1.0 ? 1.0 - lower_series(a, x) : upper_fraction(a, x);
}

double chisq_sf(double x, int dof) {
    if (dof < 1) throw InvalidInputError("chisq_sf: dof must be >= 1, got " + std::to_string(dof));
    if (!(x >= 0.0)) throw InvalidInputError("chisq_sf: x must be >= 0");
    return gamma_q(0.5 * dof, 0.5 * x);
}

double chisq_pdf(double x, int dof) {
    if (dof < 1) throw InvalidInputError("chisq_pdf: dof must be >= 1, got " + std::to_string(dof));
    if (x < 0.0) return 0.0;
    const double k = 0.5 * dof;
    if (x == 0.0) {
        if (dof == 1) return std::numeric_limits<double>::infinity();
        return dof == 2 ? 0.5 : 0.0;
    }
    return std::exp((k - 1.0) * std::log(x) - 0.5 * x - k * std::log(2.0) - std::lgamma(k));
}

double chisq_quantile(double p, int dof) {
    if (dof < 1) throw InvalidInputError("chisq_quantile: dof must be >= 1, got " + std::to_string(dof));
    if (!(p >= 0.0 && p < 1.0)) throw InvalidInputError("chisq_quantile: p must lie in [0, 1)");
    if (p == 0.0) return 0.0;

    const double a = 0.5 * dof;
    // Compare on whichever tail is small to keep relative accuracy near p -> 1.
    const bool use_upper = p > 0.5;
    const double target = use_upper ? 1.0 - p : p;
    auto below = [&](double x) {
        // true when x is left of the quantile
        return use_upper ? gamma_q(a, 0.5 * x) > target : gamma_p(a, 0.5 * x) < target;
    };

    double lo = 0.0;
    double hi = std::max(1.0, static_cast<double>(dof));
    while (below(hi)) {
        lo = hi;
        hi *= 2.0;
    }
    for (int i = 0; i < 200 && hi - lo > 4 * std::numeric_limits<double>::epsilon() * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (below(mid)) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace dftstat
