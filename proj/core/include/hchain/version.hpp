#pragma once

namespace hchain {

inline constexpr const char* version = "1.0.0";

} // namespace hchain
