#pragma once

namespace senga {

inline constexpr const char* kVersion = "0.1.0";

} // namespace senga
