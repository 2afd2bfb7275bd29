#pragma once

#include <string>

namespace netmaint {

/// Shortest decimal text that parses back to exactly `value`
/// (std::to_chars). Infinities print as `inf` / `-inf`, NaN as `nan`.
std::string format_real(double value);

}  // namespace netmaint
