#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace serrelab {

enum class Errc {
  InvalidArgument,
  SingularCurve,
  BadCharacteristic,
  OffCurve,
  MismatchedCharacteristic,
  IncompatibleCongruences,
  NonElliptic,
  OddLevel,
  LevelTooLarge,
  IndefiniteForm,
  ParityMismatch,
  InvalidConductor,
  InadmissibleOrder,
  EmptyFamily,
  DegenerateParameter,
  SingularInput,
  Overflow,
};

std::string_view to_string(Errc code);

/// Every recoverable failure in the library is reported as an Error carrying
/// one of the codes above; callers (the CLI in particular) switch on code().
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace serrelab
