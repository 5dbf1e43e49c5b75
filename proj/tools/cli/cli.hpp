#pragma once

#include <ostream>

namespace absolve_cli {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // failed verification, runtime or I/O error
inline constexpr int kExitUsage = 2;    // invalid flags
inline constexpr int kExitSector = 3;   // irregular branch outside |j| < 1/2 with --strict

// Parses argv and runs one subcommand. Never calls std::exit.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace absolve_cli
