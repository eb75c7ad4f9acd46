#include "cavspdc/error.hpp"

namespace cavspdc {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::OutOfValidityRange: return "OutOfValidityRange";
    case Errc::NoPositivePeriod: return "NoPositivePeriod";
    case Errc::DegenerateSlope: return "DegenerateSlope";
    case Errc::NoRealRoot: return "NoRealRoot";
    case Errc::InvalidReflectivity: return "InvalidReflectivity";
    case Errc::InfiniteFinesse: return "InfiniteFinesse";
    case Errc::IncompatibleTarget: return "IncompatibleTarget";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::ScenarioValidation: return "ScenarioValidation";
    case Errc::UnknownFigure: return "UnknownFigure";
    case Errc::ParseError: return "ParseError";
    case Errc::IoError: return "IoError";
  }
  return "Unknown";
}

bool is_validation_error(Errc code) {
  switch (code) {
    case Errc::OutOfValidityRange:
    case Errc::InvalidArgument:
    case Errc::ScenarioValidation:
    case Errc::UnknownFigure:
    case Errc::ParseError:
    case Errc::IoError:
    case Errc::InvalidReflectivity:
    case Errc::IncompatibleTarget:
      return true;
    default:
      return false;
  }
}

}  // namespace cavspdc
