#pragma once

#include <string>

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace confdop {

// IEEE binary128-equivalent. Used only where a 1e-18 /s rate must survive
// being added to an O(1e-5) fractional shift.
using Extended = boost::multiprecision::cpp_bin_float_quad;

// Enough digits to round-trip binary128.
inline constexpr int kExtendedDigits = 36;

std::string format_extended(const Extended& value);
Extended parse_extended(const std::string& text);

}  // namespace confdop
