#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tropcross::cli {

enum ExitCode : int { kOk = 0, kValidation = 2, kFormat = 3, kRetryBudget = 4 };

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

std::string fnv1a_hex(const std::string& bytes);

}  // namespace tropcross::cli
