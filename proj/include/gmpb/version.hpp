#pragma once

namespace gmpb {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace gmpb
