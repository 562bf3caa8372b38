#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "delab/error.hpp"

namespace delab::cli {

/// Entry point of the delab tool. Exit codes: 0 pass, 1 check failure, 2 usage or validation error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Exit code for a library error raised while running a command.
int exit_code_for(ErrorCode code) noexcept;

/// Values within 1e-6 of 1 + 2/n snap to it exactly, so the decimal 1.6666667 selects the closed-form regime.
double snap_s(int n, double s) noexcept;

/// Comma-separated numbers; throws InvalidArgument on an empty list or a bad entry.
std::vector<double> parse_number_list(const std::string& text);

}  // namespace delab::cli
