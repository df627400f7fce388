#ifndef FRACSOB_CLI_HPP
#define FRACSOB_CLI_HPP

#include <iosfwd>

namespace fracsob {

inline constexpr int kExitPass = 0;
inline constexpr int kExitInequalityFailure = 1;
inline constexpr int kExitConfigError = 2;

/// Subcommands: norm, class-check, embed, density, extend, sweep, corpus list.
/// Experiment CSVs go to $FRACSOB_OUTPUT_DIR (or the working directory) unless --output is given.
int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace fracsob

#endif  // FRACSOB_CLI_HPP
