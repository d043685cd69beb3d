#pragma once

namespace citenorm {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace citenorm
