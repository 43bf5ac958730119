#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace dftstat::cli {

/// One value per line; blank lines and lines starting with '#' are skipped.
/// With `column` set, rows are comma-separated and the column is chosen by
/// 1-based index or by header name; a first row that is not numeric in the
/// chosen column is taken as the header.
std::vector<double> read_series(std::istream& in, const std::optional<std::string>& column,
                                const std::string& source = "input");

/// As read_series; "-" reads standard input.
std::vector<double> read_series_file(const std::string& path, const std::optional<std::string>& column);

/// X_t = |log Y_t^2 - log Y_{t-2}^2|^{1/2} for t = 3..n; Y must be positive.
std::vector<double> sqrt_abs_logdiff2(std::span<const double> prices);

/// One value per line in %.17g.
void write_series(std::ostream& out, std::span<const double> series);

}  // namespace dftstat::cli
