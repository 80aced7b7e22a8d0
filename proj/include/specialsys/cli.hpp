#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace specialsys::cli {

/// Runs the command line given by argv (program name included).
/// Returns the process exit code: 0 on success, 2 on parse or
/// precondition errors, 3 when --verify finds a symbolic/oracle
/// mismatch.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Convenience overload for in-process invocation; `args` excludes the
/// program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace specialsys::cli
