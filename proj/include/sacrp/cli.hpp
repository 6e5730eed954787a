#pragma once

#include <iosfwd>

namespace sacrp {

/// The command-line tool. Exit codes: 0 success, 1 domain error
/// (infeasible, invalid, timed out), 2 usage error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sacrp
