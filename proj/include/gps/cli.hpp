#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace gps {

/// Runs one command line (without the program name). Returns 0 on success, 1
/// on a domain error and 2 on a usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// The expression grammar, shown with usage errors.
const char* grammar_help();

}  // namespace gps
