#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace bilinear::cli {

// Parses argv-style arguments and dispatches to the library. Returns the
// process exit code: 0 success, 2 domain/stationarity error, 3 numeric
// failure (pole, overflow, degenerate variance, unresolved bracket).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bilinear::cli
