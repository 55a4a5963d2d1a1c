#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace ghforge {

/// Node budget verify-theorem uses unless --budget is given.
inline constexpr std::uint64_t kDefaultTheoremBudget = 200'000'000;

/// Runs one CLI invocation. `args` excludes the program name. Returns the
/// process exit code: 0 success, 1 computation failure or theorem mismatch,
/// 2 usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ghforge
