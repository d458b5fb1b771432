#pragma once

namespace robreg {
inline constexpr const char* kVersion = "0.1.0";
}
