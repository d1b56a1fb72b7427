#pragma once

#include <map>
#include <ostream>
#include <string>
#include <vector>

namespace rspec::cli {

// Runs one invocation (arguments without the program name). Returns 0 on
// success, 1 on a domain error (JSON on `err`), 2 on a usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// key = value lines; '#' starts a comment, surrounding quotes are stripped.
std::map<std::string, std::string> read_config(const std::string& path);

}  // namespace rspec::cli
