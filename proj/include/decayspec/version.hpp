#pragma once

namespace decayspec {
inline constexpr const char* kVersion = "0.1.0";
}
