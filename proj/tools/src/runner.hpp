#pragma once

#include <exception>
#include <ostream>

namespace xlayer::cli {

/// 1 for invalid input or configuration, 2 for numerical non-convergence.
int exit_code_for(std::exception_ptr error);

/// Parses the command line, runs one experiment and writes its CSV.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace xlayer::cli
