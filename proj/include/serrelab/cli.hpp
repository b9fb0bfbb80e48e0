#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace serrelab {

/// Exit codes of the command-line front end.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitCheckFailed = 3;

/// Runs the command line (arguments without the program name) and returns
/// the process exit code. Results go to `out` unless --output names a file.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// 64-bit FNV-1a digest used for output fingerprints in run manifests.
std::uint64_t fnv1a64(std::string_view bytes);

}  // namespace serrelab
