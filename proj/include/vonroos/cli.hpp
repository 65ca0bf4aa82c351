#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace vonroos {

/// Command-line front end shared by the binary and the tests. `args` excludes
/// the program name; data goes to `out`, diagnostics to `err`.
/// Exit codes: 0 success, 1 domain/admissibility failure, 2 usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace vonroos
