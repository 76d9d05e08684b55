#pragma once

#include <iostream>

namespace twl::cli {

// Exit codes shared by all subcommands.
inline constexpr int kOk = 0;
inline constexpr int kIoError = 1;
inline constexpr int kUnproven = 2;
inline constexpr int kBoundViolation = 3;
inline constexpr int kUsage = 64;

int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr);

}  // namespace twl::cli
