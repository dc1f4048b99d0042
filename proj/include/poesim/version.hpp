#pragma once

namespace poesim {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace poesim
