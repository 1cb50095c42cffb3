#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace confdop {

enum class ErrorKind {
  SingularTransform,
  DomainCrossing,
  SlopeSingular,
  ZeroRadius,
  StepDivergence,
  NotPastCone,
  OutsideFirstOrderRegime,
  EpochOutOfRange,
  ConfigInvalid,
  ZeroRange,
  DegenerateDesign,
  ZeroSigma,
  MalformedInput,
  InvalidArgument,
};

std::string_view to_string(ErrorKind kind);

// Every failure raised by the library carries a kind so the CLI can map it to
// a stable exit code and tests can assert on the category.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace confdop
