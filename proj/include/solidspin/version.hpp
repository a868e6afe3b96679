#pragma once

namespace solidspin {
inline constexpr const char* kVersion = "0.1.0";
}
