#pragma once

namespace biharmonic {

inline constexpr const char* version = "0.1.0";

}  // namespace biharmonic
