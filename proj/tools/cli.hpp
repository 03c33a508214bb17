#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ctlab::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kFailed = 1;
inline constexpr int kUndecided = 2;
inline constexpr int kUsage = 3;

// args excludes the program name.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace ctlab::cli
