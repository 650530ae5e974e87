#pragma once

#include <iosfwd>

namespace socialucb {

/// Entry point behind the `socialucb` executable. Returns the process exit
/// status: 0 on success, 1 on configuration or I/O failure, 2 on bad usage.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace socialucb
