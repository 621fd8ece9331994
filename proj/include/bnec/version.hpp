#pragma once

namespace bnec {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace bnec
