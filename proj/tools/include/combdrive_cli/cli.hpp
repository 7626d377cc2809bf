#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace combdrive::cli {

enum ExitCode { kOk = 0, kValidation = 1, kNumerical = 2, kCheckFailed = 3 };

/// Runs one invocation. `args` excludes the program name. Data goes to
/// `out`, messages to `err`.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace combdrive::cli
