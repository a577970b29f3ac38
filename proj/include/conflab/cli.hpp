#pragma once

// Command-line front end. Exit codes: 0 all requested checks pass, 1 some
// check fails, 2 usage, parse or precondition error.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace conflab {

inline constexpr std::uint64_t kDefaultSeed = 20240617;

// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace conflab
