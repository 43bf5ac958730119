#pragma once

#include <iosfwd>

namespace dftstat::cli {

/// Exit codes: 0 ran (whatever the test decided), 2 input error, 3 numerical error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitNumerical = 3;

/// Entry point of the `dftstat` tool: test, segment, simulate, mc, scan, power.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dftstat::cli
