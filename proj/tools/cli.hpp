#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cuspgeo::cli {

/// Exit statuses of the command-line front-end.
inline constexpr int kOk = 0;
inline constexpr int kFailure = 1;       // solver non-convergence and other runtime errors
inline constexpr int kDomainError = 2;   // invalid parameters or input data
inline constexpr int kVerifyFailed = 3;  // a verification report has failures
inline constexpr int kUsage = 64;        // unknown flag or malformed command line

/// Runs one command. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cuspgeo::cli
