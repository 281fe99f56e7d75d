#pragma once

// Command-line front end. Exit codes: 0 success, 1 mathematical negative
// (non-member, inequivalent, outside the exp image), 2 usage or input error.
// Results go to `out`, diagnostics to `err` only.

#include <iosfwd>
#include <string>
#include <vector>

namespace upq::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitNegative = 1;
inline constexpr int kExitUsage = 2;

// Optional override of the default membership tolerance.
inline constexpr const char* kToleranceEnv = "UPQ_DEFAULT_TOL";

// args[0] is the program name. "-" as a file argument reads from `in`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace upq::cli
