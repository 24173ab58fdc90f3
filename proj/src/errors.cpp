#include "cqed/errors.hpp"

namespace cqed {

std::string_view errorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument:
      return "invalid_argument";
    case ErrorCode::NoPeak:
      return "no_peak";
    case ErrorCode::BandwidthUnresolved:
      return "bandwidth_unresolved";
    case ErrorCode::NotConverged:
      return "not_converged";
    case ErrorCode::NonFiniteResidual:
      return "non_finite_residual";
    case ErrorCode::InsufficientSpan:
      return "insufficient_span";
    case ErrorCode::NotResonant:
      return "not_resonant";
    case ErrorCode::MalformedOptionLine:
      return "malformed_option_line";
    case ErrorCode::UnsupportedVersion:
      return "unsupported_version";
    case ErrorCode::WrongPortCount:
      return "wrong_port_count";
    case ErrorCode::NonMonotonicFrequency:
      return "non_monotonic_frequency";
    case ErrorCode::MissingColumn:
      return "missing_column";
    case ErrorCode::RaggedGrid:
      return "ragged_grid";
    case ErrorCode::NonFiniteValue:
      return "non_finite_value";
  }
  return "unknown";
}

}  // namespace cqed
