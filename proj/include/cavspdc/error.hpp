#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cavspdc {

enum class Errc {
  OutOfValidityRange,
  NoPositivePeriod,
  DegenerateSlope,
  NoRealRoot,
  InvalidReflectivity,
  InfiniteFinesse,
  IncompatibleTarget,
  InvalidArgument,
  ScenarioValidation,
  UnknownFigure,
  ParseError,
  IoError,
};

std::string_view to_string(Errc code);

/// Validation-class errors map to CLI exit code 2, numeric failures to 3.
bool is_validation_error(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  [[nodiscard]] Errc code() const { return code_; }

 private:
  Errc code_;
};

}  // namespace cavspdc
