#pragma once

namespace socialucb {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace socialucb
