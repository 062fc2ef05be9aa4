#pragma once

// Command-line front end. Every subcommand takes key=value arguments, an
// optional JSON config file (--config, overridden by key=value), --seed and
// --out. All results are computed before anything is written, so a config
// error or a numerical failure leaves the output directory untouched.

#include <iosfwd>

namespace hyperlm {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitNumerical = 2;

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hyperlm
