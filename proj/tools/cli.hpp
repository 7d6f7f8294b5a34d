#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace icbargain::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // analysis refused (phase 1, regularity, domain)
inline constexpr int kExitUsage = 2;

// Environment variable naming the directory that relative --out paths are
// resolved against.
inline constexpr const char* kOutDirEnv = "ICBARGAIN_OUT_DIR";

// Runs one command. `args` excludes the program name. Results go to `out`
// (or to the --out file), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace icbargain::cli
