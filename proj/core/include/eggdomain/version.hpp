#pragma once

namespace eggdomain {

inline constexpr const char* version = "0.1.0";

} // namespace eggdomain
