#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ppmwt::cli {

/// Runs one command-line invocation against the given streams and returns
/// the process exit code: 0 success, 1 usage error, 2 infeasible parameters,
/// 3 internal failure (including a failed selftest).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Convenience overload for tests: args without the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ppmwt::cli
