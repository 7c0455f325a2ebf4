#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace autorb {

/// Runs the command-line front end. Exit codes: 0 computed (certified or
/// bounds, including failing verify checks), 2 usage or parse error,
/// 3 resource cap exceeded, 1 anything else.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace autorb
