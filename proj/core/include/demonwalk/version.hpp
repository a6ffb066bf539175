#pragma once

namespace demonwalk {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace demonwalk
