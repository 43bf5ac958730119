#include "cli/options.hpp"

#include <charconv>
#include <cmath>
#include <limits>

#include "dftstat/errors.hpp"

namespace dftstat::cli {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> out;
    for (;;) {
        const auto pos = text.find(sep);
        out.push_back(trim(text.substr(0, pos)));
        if (pos == std::string_view::npos) return out;
        text.remove_prefix(pos + 1);
    }
}

long long parse_integer(std::string_view text) {
    long long value = 0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (text.empty() || ec != std::errc() || ptr != end) {
        throw InvalidInputError("--lags: '" + std::string(text) + "' is not an integer");
    }
    return value;
}

}  // namespace

double parse_number(std::string_view text, std::string_view what) {
    text = trim(text);
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    double value = 0.0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (text.empty() || ec != std::errc() || ptr != end || !std::isfinite(value)) {
        throw InvalidInputError(std::string(what) + ": '" + std::string(text) + "' is not a finite number");
    }
    return value;
}

std::vector<double> parse_number_list(std::string_view text, std::string_view what) {
    std::vector<double> out;
    for (const auto item : split(text, ',')) out.push_back(parse_number(item, what));
    return out;
}

std::vector<int> parse_lag_list(std::string_view text) {
    std::vector<int> out;
    constexpr long long kMax = std::numeric_limits<int>::max();
    for (const auto item : split(text, ',')) {
        const auto dots = item.find("..");
        const long long lo = parse_integer(trim(item.substr(0, dots)));
        const long long hi = dots == std::string_view::npos ? lo : parse_integer(trim(item.substr(dots + 2)));
        if (lo > hi) throw InvalidInputError("--lags: empty range '" + std::string(item) + "'");
        if (lo < -kMax || hi > kMax || hi - lo > 1'000'000) {
            throw InvalidInputError("--lags: range '" + std::string(item) + "' is too large");
        }
        for (long long r = lo; r <= hi; ++r) out.push_back(static_cast<int>(r));
    }
    return out;
}

std::optional<double> parse_bandwidth(std::string_view text) {
    if (trim(text) == "auto") return std::nullopt;
    return parse_number(text, "--bandwidth");
}

}  // namespace dftstat::cli
