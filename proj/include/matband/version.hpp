#pragma once

namespace matband {

inline constexpr const char* kToolVersion = "matband 0.1.0";

}  // namespace matband
