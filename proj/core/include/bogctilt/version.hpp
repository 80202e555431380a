#pragma once

namespace bogctilt {
inline constexpr const char* kVersion = "0.1.0";
}
