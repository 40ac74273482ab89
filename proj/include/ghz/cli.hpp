#ifndef GHZ_CLI_HPP_
#define GHZ_CLI_HPP_

#include <ostream>

namespace ghz::cli {

// Subcommands: exercise1, exercise2, play, oracle, serve <device|agent|referee>.
// Returns the process exit code; usage errors return 2.
int cli_dispatch(int argc, const char* const* argv, std::ostream& out,
                 std::ostream& err);

}  // namespace ghz::cli

#endif  // GHZ_CLI_HPP_
