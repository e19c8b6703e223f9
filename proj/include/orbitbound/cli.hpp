#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace orbitbound {

/// Runs one command; args excludes the program name. Exit codes: 0 success,
/// 1 domain error, 2 parse error (bad flags or malformed files).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace orbitbound
