#pragma once

#include <iosfwd>

namespace umwelt::cli {

enum ExitCode : int { ok = 0, failure = 1, input_error = 2 };

/// Runs `umwelt <command> ...`; regular output goes to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace umwelt::cli
