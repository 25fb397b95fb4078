#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace medaug {

enum class ErrorCode {
  InvalidArgument,
  ChannelMismatch,
  DimensionMismatch,
  InvalidFactor,
  InvalidSigma,
  InvalidAlpha,
  InvalidLambda,
  TargetTooLarge,
  DatasetTooSmall,
  HeterogeneousDims,
  EmptyEvaluationSet,
  LengthMismatch,
  EmptyInput,
  MissingDirectory,
  UnpairedMask,
  EmptyClass,
  InvalidTarget,
  EmptyRoster,
  Io,
  Decode,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so
/// callers (and the CLI) can branch without parsing messages.
class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

}  // namespace medaug
