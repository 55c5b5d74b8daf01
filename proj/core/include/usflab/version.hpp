#pragma once

namespace usflab {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace usflab
