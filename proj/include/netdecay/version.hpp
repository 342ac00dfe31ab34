#pragma once

namespace netdecay {

inline constexpr const char* kToolVersion = "0.1.0";

} // namespace netdecay
