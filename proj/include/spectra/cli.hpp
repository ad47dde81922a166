#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace spectra {

/// Runs the command-line driver. Returns 0 on success, 1 on validation
/// errors (including unknown flags), 2 on numerical failures.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace spectra
