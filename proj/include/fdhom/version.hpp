#pragma once

namespace fdhom {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace fdhom
