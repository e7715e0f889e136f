#pragma once

#include <iosfwd>

namespace gpforge {

/// Exit codes: 0 success, 1 usage error, 2 input error, 3 internal error.
int run_cli(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace gpforge
