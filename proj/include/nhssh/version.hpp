#pragma once

#include <string_view>

namespace nhssh {

inline constexpr std::string_view kToolVersion = "0.1.0";

}  // namespace nhssh
