#pragma once

namespace pspin::cli {

/// Entry point of the pspin command-line tool.
/// Exit codes: 0 all checks passed, 1 a check failed, 2 usage error.
int run(int argc, const char *const *argv);

} // namespace pspin::cli
