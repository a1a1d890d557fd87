#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sweep::cli {

// Runs one command; returns the process exit code (0 holds / ok, 1 fails, 2 error).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sweep::cli
