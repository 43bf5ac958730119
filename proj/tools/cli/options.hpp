#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dftstat::cli {

/// Parses a finite decimal number; `what` names the flag in error messages.
double parse_number(std::string_view text, std::string_view what);

/// Comma-separated numbers, e.g. "0.01,0.05".
std::vector<double> parse_number_list(std::string_view text, std::string_view what);

/// Comma-separated lags and inclusive ranges, e.g. "1,3,5..8".
std::vector<int> parse_lag_list(std::string_view text);

/// "auto" (empty result) or a number.
std::optional<double> parse_bandwidth(std::string_view text);

}  // namespace dftstat::cli
