#pragma once

#include <iosfwd>

namespace hdlforge::cli {

/// Exit codes: 0 success, 1 generation shortfall or I/O failure, 2 usage error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace hdlforge::cli
