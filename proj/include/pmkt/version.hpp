#pragma once

namespace pmkt {

inline constexpr const char* version = "0.1.0";

} // namespace pmkt
