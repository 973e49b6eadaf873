#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace omega {

// Exit statuses of the command line front end.
enum ExitStatus : int { kExitOk = 0, kExitRefuted = 1, kExitExhausted = 2, kExitUsage = 3 };

/// Runs one command; args excludes the program name.
int runCommand(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace omega
