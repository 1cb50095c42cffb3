#include "confdop/extended.hpp"

#include <ios>

#include "confdop/errors.hpp"

namespace confdop {

std::string format_extended(const Extended& value) {
  return value.str(kExtendedDigits, std::ios_base::scientific);
}

Extended parse_extended(const std::string& text) {
  // boost accepts leading/trailing garbage in some forms; insist on a plain
  // decimal literal.
  if (text.empty() || text.find_first_not_of("0123456789+-.eE") != std::string::npos) {
    throw Error(ErrorKind::MalformedInput, "not a decimal number: '" + text + "'");
  }
  try {
    return Extended(text);
  } catch (const std::exception&) {
    throw Error(ErrorKind::MalformedInput, "not a decimal number: '" + text + "'");
  }
}

}  // namespace confdop
