#pragma once

namespace tropcross {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace tropcross
