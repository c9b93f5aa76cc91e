#pragma once

namespace qsl {
inline constexpr const char* version = "1.0.0";
}
