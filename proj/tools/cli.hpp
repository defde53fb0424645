#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace riemext::cli {

/// Exit codes: 0 all checks pass (or output produced), 1 a check failed or
/// was undecided, 2 usage, input or parse error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace riemext::cli
