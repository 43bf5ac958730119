#include "cli/report.hpp"

#include <charconv>
#include <cstdio>

namespace dftstat::cli {

std::string g17(double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

std::string shortest(double value) {
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, ptr);
}

nlohmann::json result_json(const TestResult& result) {
    nlohmann::json decisions = nlohmann::json::object();
    for (const auto& d : result.decisions) decisions[shortest(d.level)] = d.reject;
    nlohmann::json covariances = nlohmann::json::array();
    for (std::size_t n = 0; n < result.lags.size(); ++n) {
        covariances.push_back({{"lag", result.lags[n]},
                               {"re", result.covariances[n].real()},
                               {"im", result.covariances[n].imag()}});
    }
    return {{"statistic", result.statistic},
            {"dof", result.dof},
            {"p_value", result.p_value},
            {"decisions", decisions},
            {"covariances", covariances},
            {"corrections", result.corrections}};
}

nlohmann::json test_config_json(const TestResult& result, const TestOptions& options) {
    std::vector<double> levels;
    for (const auto& d : result.decisions) levels.push_back(d.level);
    return {{"length", result.length},
            {"lags", result.lags},
            {"kernel", std::string(to_string(result.kernel.kind))},
            {"bandwidth", result.kernel.bandwidth},
            {"bandwidth_auto", !options.bandwidth.has_value()},
            {"bandwidth_warning", result.bandwidth_warning},
            {"ridge_factor", options.ridge_factor},
            {"ridge", result.ridge},
            {"correction", result.correction_mode},
            {"demean", result.demeaned},
            {"levels", levels}};
}

}  // namespace dftstat::cli
