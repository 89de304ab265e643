#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace cat0 {

// Runs one tool invocation. args excludes the program name. Returns the
// process exit code: 0 success, 1 domain error (a structured {"error": ...}
// object is emitted), 2 usage error. Deterministic for fixed args and seed;
// the --seed flag defaults to the CAT0_SEED environment variable.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cat0
