#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dauction {

inline constexpr int kExitOk = 0;
inline constexpr int kExitPropertyFail = 1;
inline constexpr int kExitInputError = 2;

/// Entry point of the `dauction` tool. `args` excludes the program name.
/// Returns 0 on success or a passing check, 1 when a checked property fails
/// (or passes under --expect-fail), 2 on usage or input errors.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dauction
