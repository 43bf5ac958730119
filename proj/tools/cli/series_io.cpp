#include "cli/series_io.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "cli/options.hpp"
#include "cli/report.hpp"
#include "dftstat/errors.hpp"

namespace dftstat::cli {

namespace {

std::string_view strip(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> fields(std::string_view line) {
    std::vector<std::string_view> out;
    for (;;) {
        const auto pos = line.find(',');
        out.push_back(strip(line.substr(0, pos)));
        if (pos == std::string_view::npos) return out;
        line.remove_prefix(pos + 1);
    }
}

std::optional<double> try_number(std::string_view text) {
    try {
        return parse_number(text, "value");
    } catch (const InvalidInputError&) {
        return std::nullopt;
    }
}

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (const char c : s) {
        if (c < '0' || c > '9') return false;
    }
    return true;
}

}  // namespace

std::vector<double> read_series(std::istream& in, const std::optional<std::string>& column,
                                const std::string& source) {
    std::vector<double> out;
    std::optional<std::size_t> index;  // 0-based once resolved
    if (column && all_digits(*column)) {
        const auto one_based = std::stoul(*column);
        if (one_based == 0) throw InvalidInputError("--column: indices start at 1");
        index = one_based - 1;
    }
    bool first_row = true;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto text = strip(line);
        if (text.empty() || text.front() == '#') continue;
        auto where = [&] { return source + ":" + std::to_string(line_no); };

        if (!column) {
            const auto value = try_number(text);
            if (!value) {
                std::string msg = where() + ": '" + std::string(text) + "' is not a number";
                if (text.find(',') != std::string_view::npos) msg += " (use --column for CSV input)";
                throw InvalidInputError(msg);
            }
            out.push_back(*value);
            continue;
        }

        const auto row = fields(text);
        if (first_row) {
            first_row = false;
            if (!index) {
                for (std::size_t i = 0; i < row.size(); ++i) {
                    if (row[i] == *column) index = i;
                }
                if (!index) throw InvalidInputError(where() + ": no column named '" + *column + "' in the header");
                continue;
            }
            if (*index < row.size() && !try_number(row[*index])) continue;  // header row
        }
        if (*index >= row.size()) {
            throw InvalidInputError(where() + ": row has " + std::to_string(row.size()) + " columns, need " +
                                    std::to_string(*index + 1));
        }
        const auto value = try_number(row[*index]);
        if (!value) throw InvalidInputError(where() + ": '" + std::string(row[*index]) + "' is not a number");
        out.push_back(*value);
    }
    if (out.empty()) throw InvalidInputError(source + ": no observations");
    return out;
}

std::vector<double> read_series_file(const std::string& path, const std::optional<std::string>& column) {
    if (path == "-") return read_series(std::cin, column, "stdin");
    std::ifstream in(path);
    if (!in) throw InvalidInputError("cannot open '" + path + "'");
    return read_series(in, column, path);
}

std::vector<double> sqrt_abs_logdiff2(std::span<const double> prices) {
    if (prices.size() < 3) throw InvalidInputError("sqrt-abs-logdiff2 needs at least 3 observations");
    for (std::size_t t = 0; t < prices.size(); ++t) {
        if (!(prices[t] > 0.0)) {
            throw InvalidInputError("sqrt-abs-logdiff2: observation " + std::to_string(t + 1) + " is not positive");
        }
    }
    std::vector<double> out(prices.size() - 2);
    for (std::size_t t = 2; t < prices.size(); ++t) {
        out[t - 2] = std::sqrt(std::abs(2.0 * std::log(prices[t]) - 2.0 * std::log(prices[t - 2])));
    }
    return out;
}

void write_series(std::ostream& out, std::span<const double> series) {
    for (const double v : series) out << g17(v) << '\n';
}

}  // namespace dftstat::cli
