#pragma once

namespace rwent {

inline constexpr const char* kVersion = "0.1.0";

}
