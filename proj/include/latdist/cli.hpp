#pragma once

#include <ostream>

namespace latdist::cli {

// Exit statuses.
inline constexpr int kOk = 0;
inline constexpr int kValidation = 2;
inline constexpr int kCapacity = 3;
inline constexpr int kAcceptanceFailure = 4;

/// Parses argv, dispatches the subcommand and writes its report to `out`
/// (or the --output file). Errors go to `err` as a single line
/// "error: <kind>: <reason>".
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace latdist::cli
