#pragma once

#include <iosfwd>

namespace tracewick {

// Full command-line front end; reports on `out`, diagnostics on `err`.
// Exit codes: 0 success, 1 a requested check failed, 2 usage or parse
// error, 3 a resource cap was exceeded.
int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

}  // namespace tracewick
