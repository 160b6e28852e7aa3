#pragma once

namespace rinf {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace rinf
