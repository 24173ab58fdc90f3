#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cqed {

// Typed error conditions raised by the library. Every failure path throws
// cqed::Error with one of these codes; messages carry location info (line or
// row numbers) where a parser produced them.
enum class ErrorCode {
  InvalidArgument,
  NoPeak,
  BandwidthUnresolved,
  NotConverged,
  NonFiniteResidual,
  InsufficientSpan,
  NotResonant,
  MalformedOptionLine,
  UnsupportedVersion,
  WrongPortCount,
  NonMonotonicFrequency,
  MissingColumn,
  RaggedGrid,
  NonFiniteValue,
};

// Stable snake_case identifier for an error code (used in CLI JSON output).
std::string_view errorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Convenience used by validators and parsers.
[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace cqed
