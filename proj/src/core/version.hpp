#pragma once

namespace fgmsc {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace fgmsc
