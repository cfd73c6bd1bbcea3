#pragma once

#include <functional>
#include <ostream>
#include <string>
#include <vector>

namespace eofol::cli {

inline constexpr const char* schema = "eo-folkit/1";

enum ExitCode : int { pass = 0, assertion_failure = 1, usage_error = 2 };

/// Runs one invocation. `args` excludes the program name. Reports go to `out`
/// (or the --out file), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Runs `body`, mapping assertion_error to exit 1 (with a JSON failure report
/// on `err`) and argument or runtime errors to exit 2 (with `usage`).
int guarded(const std::string& subcommand, const std::string& usage, std::ostream& err,
            const std::function<void()>& body);

}  // namespace eofol::cli
