#pragma once

namespace surfq {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace surfq
