#pragma once

#include <string_view>

namespace ofdmlab {

inline constexpr std::string_view kVersionString = "ofdmlab 0.1.0";

} // namespace ofdmlab
