#pragma once

// The loopchain command line, callable in-process for testing.
//
//   loopchain run (--preset NAME | --config FILE) [--set key=value]... [--out CSV]
//                 [--sweep key=v1,v2,...]... [--jobs N]
//   loopchain check (--preset NAME | --config FILE) [--set key=value]... [--condition ID]...
//   loopchain tridiagonalize FILE
//   loopchain preset-list
//
// Exit codes: 0 success, 1 usage, parse or validation error, 2 accuracy error
// (norm drift above bound; retry with a smaller grid.dt).

#include <iosfwd>
#include <string>
#include <vector>

namespace loopchain::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitAccuracy = 2;

/// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Expands repeated "key=v1,v2" sweep specs into the cartesian product of
/// override lists, first key varying slowest.
std::vector<std::vector<std::string>> expand_sweep(const std::vector<std::string>& specs);

/// "runs.csv" -> "runs_3.csv"; appends when there is no extension.
std::string indexed_path(const std::string& path, std::size_t index);

}  // namespace loopchain::cli
