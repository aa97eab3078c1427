#pragma once

namespace mapgen {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace mapgen
