#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bracecalc {

// Command-line driver shared by the binary and the tests.  `args` holds
// everything after the program name.  Reports go to `out`, usage and error
// messages to `err`; the return value is the process exit code: 0 when no
// verdict fails, 2 when some verdict fails, 1 on usage or runtime errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bracecalc
