#ifndef UNSEEN_CLI_HPP
#define UNSEEN_CLI_HPP

#include <ostream>

namespace unseen::cli {

/// Parses argv and runs one subcommand. Returns 0 on success, 2 on usage or
/// validation errors and 1 on runtime errors.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace unseen::cli

#endif  // UNSEEN_CLI_HPP
