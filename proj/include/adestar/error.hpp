#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace adestar {

enum class ErrorCode {
  ClosureOverflow,
  OddCycleUnsupported,
  InvalidArgument,
  SplitFailure,
  NotFound,
  NonIntegerMultiplicity,
  NotADE,
  MeshTooCoarse,
  DegreeOverflow,
  SynthesisFailed,
  SpectrumViolation,
  BlockLeakage,
  LogBranchFailure,
  RelaxationDiverged,
  PreconditionFailed,
  FormatError,
};

std::string_view to_string(ErrorCode code);

// Every failure surfaced by the library carries one of the codes above so
// callers (CLI, bindings, tests) can react without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace adestar
