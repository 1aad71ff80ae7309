#ifndef CARNOT_CLI_HPP
#define CARNOT_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace carnot {

/// Command dispatch; returns the process exit code: 0 success, 1 verdict
/// failure, 2 malformed input or usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace carnot

#endif
