#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tropodegen {

/// Runs the command line front end; args excludes the program name.
/// Returns the process exit code (0 ok, 2 input error, 3 numeric failure).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tropodegen
