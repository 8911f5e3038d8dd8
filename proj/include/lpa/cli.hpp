#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace lpa {

// Entry point behind the lpa binary; takes the argument vector without the
// program name. Exit codes: 0 success, 2 parse or usage error, 3
// uncountable-emitter rejection, 4 ambient mismatch, 5 verification
// failure.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lpa
