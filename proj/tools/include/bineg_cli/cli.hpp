#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bineg::cli {

// Exit status for malformed flags, unparseable input and IO failures; the
// harness statuses 0/1/2 are passed through unchanged.
inline constexpr int kUsageError = 64;

// args excludes the program name. Reports go to --out when given, otherwise
// to out; diagnostics and timing go to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bineg::cli
