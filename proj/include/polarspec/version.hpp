#pragma once

namespace polarspec {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace polarspec
