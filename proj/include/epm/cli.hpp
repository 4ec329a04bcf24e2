#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace epm::cli {

/// Exit codes: 0 success, 1 validation failure, 2 input error.
enum ExitCode : int { kOk = 0, kValidationFailed = 1, kInputError = 2 };

/// Entry point of the `epm` tool; argv[0] is the program name.
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

/// "min:max:n" -> n evenly spaced values including both ends.
std::vector<double> parse_grid(const std::string &spec);

/// "1,2.5,4" -> {1, 2.5, 4}.
std::vector<double> parse_list(const std::string &spec);

} // namespace epm::cli
