#pragma once

namespace caa {

inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace caa
