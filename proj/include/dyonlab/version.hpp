#pragma once

namespace dyonlab {

inline constexpr const char* kVersion = "dyonlab 0.1.0";

}  // namespace dyonlab
