#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace lve::cli {

inline constexpr int kOk = 0;
inline constexpr int kMismatch = 1;
inline constexpr int kInputError = 2;

// Runs the lve command line (arguments without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lve::cli
