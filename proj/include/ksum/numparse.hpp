#pragma once

#include <string_view>

#include "ksum/arith.hpp"

namespace ksum {

/// Evaluates a small arithmetic expression at the given precision so that inputs
/// such as "9/10", "3pi/4", "2*pi/3", "100/sqrt(199)" or "log(2)" stay exact up to
/// working precision instead of passing through a double.
///
/// Grammar: + - * / ^(integer), parentheses, implicit product ("3pi"), the constant
/// `pi`, and the functions sqrt, log, exp, sin, cos.
BigReal parse_value(std::string_view text, int digits);

}  // namespace ksum
