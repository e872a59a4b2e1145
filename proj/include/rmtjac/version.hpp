#pragma once

namespace rmtjac {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace rmtjac
