#pragma once

namespace specband {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace specband
