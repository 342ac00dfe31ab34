#pragma once

#include <string>
#include <vector>

namespace netdecay::cli {

// Exit codes: 0 success, 1 domain/validation error, 2 property-check violation.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitViolation = 2;

int run(const std::vector<std::string>& args);

} // namespace netdecay::cli
