#pragma once

#include <iosfwd>

namespace tipsy {

// Exit codes of the command-line front end.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitValidation = 3;
inline constexpr int kExitVerification = 4;

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tipsy
