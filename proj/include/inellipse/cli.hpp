#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace inellipse::cli {

/// Exit codes of run().
inline constexpr int kSolved = 0;
inline constexpr int kInputError = 1;
inline constexpr int kNoSolution = 2;

/// Entry point of the `inellipse` tool. `args` excludes the program name.
/// Input named "-" (or omitted) is read from `in`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace inellipse::cli
