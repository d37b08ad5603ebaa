#pragma once

namespace diqsdc {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace diqsdc
