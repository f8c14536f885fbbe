#pragma once

namespace hgu {

inline constexpr const char* kVersion = "hgu 0.1.0";

}  // namespace hgu
