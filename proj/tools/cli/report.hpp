#pragma once

#include <complex>
#include <json.hpp>
#include <string>

#include "dftstat/stattest.hpp"

namespace dftstat::cli {

/// printf("%.17g"): the pinned text and CSV number format.
std::string g17(double value);

/// Shortest round-trip representation, used for level labels.
std::string shortest(double value);

/// {"statistic", "dof", "p_value", "decisions": {level: reject}, ...}.
nlohmann::json result_json(const TestResult& result);

/// Echo of the test configuration that produced `result`.
nlohmann::json test_config_json(const TestResult& result, const TestOptions& options);

}  // namespace dftstat::cli
