#pragma once

namespace rhotica {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kToolName = "rhotica";

}  // namespace rhotica
