#pragma once

namespace tailweight {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace tailweight
