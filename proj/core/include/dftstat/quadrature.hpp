#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <sstream>
#include <type_traits>

#include "dftstat/errors.hpp"

namespace dftstat {

struct Interval {
    double lo;
    double hi;
};

/// Composite trapezoid estimate plus a Richardson-style error estimate
/// |I_n - I_{n/2}| / 3, where I_{n/2} reuses every other node.
template <typename T>
struct QuadratureResult {
    T value;
    double error_estimate;
};

namespace detail {

template <typename T>
bool all_finite(const T& v) {
    if constexpr (std::is_floating_point_v<T>) {
        return std::isfinite(v);
    } else {
        return std::isfinite(v.real()) && std::isfinite(v.imag());
    }
}

inline double trapezoid_weight(std::size_t i, std::size_t n) { return (i == 0 || i == n) ? 0.5 : 1.0; }

}  // namespace detail

/// Composite trapezoid rule on [range.lo, range.hi] with n intervals (n >= 2).
template <typename F>
auto trapezoid_1d(F&& f, Interval range, std::size_t n) -> std::invoke_result_t<F&, double> {
    using Value = std::invoke_result_t<F&, double>;
    if (n < 2) throw InvalidInputError("trapezoid_1d: need at least 2 intervals");
    const double h = (range.hi - range.lo) / static_cast<double>(n);
    Value acc{};
    for (std::size_t i = 0; i <= n; ++i) {
        const double x = range.lo + h * static_cast<double>(i);
        const Value v = f(x);
        if (!detail::all_finite(v)) {
            std::ostringstream msg;
            msg << "trapezoid_1d: non-finite integrand at " << x;
            throw NumericalError(msg.str());
        }
        acc += detail::trapezoid_weight(i, n) * v;
    }
    return acc * h;
}

/// Composite trapezoid rule for f(x, y) over the rectangle x_range * y_range
/// with nx * ny intervals. Both interval counts must be even and >= 16.
/// Returns double or std::complex<double> according to what f returns.
template <typename F>
auto trapezoid_2d(F&& f, Interval x_range, Interval y_range, std::size_t nx, std::size_t ny)
    -> QuadratureResult<std::invoke_result_t<F&, double, double>> {
    using Value = std::invoke_result_t<F&, double, double>;
    if (nx < 16 || ny < 16 || nx % 2 != 0 || ny % 2 != 0) {
        throw InvalidInputError("trapezoid_2d: grid sizes must be even and >= 16");
    }
    const double hx = (x_range.hi - x_range.lo) / static_cast<double>(nx);
    const double hy = (y_range.hi - y_range.lo) / static_cast<double>(ny);

    Value fine{};
    Value coarse{};
    for (std::size_t i = 0; i <= nx; ++i) {
        const double x = x_range.lo + hx * static_cast<double>(i);
        const double wx = detail::trapezoid_weight(i, nx);
        const double wx_coarse = (i % 2 == 0) ? detail::trapezoid_weight(i / 2, nx / 2) : 0.0;
        for (std::size_t j = 0; j <= ny; ++j) {
            const double y = y_range.lo + hy * static_cast<double>(j);
            const Value v = f(x, y);
            if (!detail::all_finite(v)) {
                std::ostringstream msg;
                msg << "trapezoid_2d: non-finite integrand at (" << x << ", " << y << ")";
                throw NumericalError(msg.str());
            }
            fine += (wx * detail::trapezoid_weight(j, ny)) * v;
            if (wx_coarse != 0.0 && j % 2 == 0) {
                coarse += (wx_coarse * detail::trapezoid_weight(j / 2, ny / 2)) * v;
            }
        }
    }
    fine *= hx * hy;
    coarse *= 4.0 * hx * hy;
    return {fine, std::abs(fine - coarse) / 3.0};
}

}  // namespace dftstat
