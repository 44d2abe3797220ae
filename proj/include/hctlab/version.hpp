#pragma once

namespace hctlab {

inline constexpr const char* version = "0.1.0";

}  // namespace hctlab
