#pragma once

#include <iosfwd>

namespace tlsteiner {

/// Entry point of the `tlsteiner` tool: `solve`, `oracle`, `gen`, `bench`.
/// Returns the process exit code (0 on success).
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tlsteiner
