#pragma once

namespace biblio {

/// Entry point of the command-line tool. Exit codes: 0 success,
/// 1 validation or computation failure, 2 usage error, 3 size guard.
int run_cli(int argc, const char* const* argv);

} // namespace biblio
