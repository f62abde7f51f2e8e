#pragma once

namespace kdioph {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace kdioph
