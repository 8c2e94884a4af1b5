// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bgaug {

/// Runs the command line; args[0] is the program name. Returns the exit code
/// (0 success, 2 configuration error, 3 data/format error, 4 I/O error).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bgaug
