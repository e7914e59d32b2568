#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ahp {

enum class ErrorCode {
  // pcm
  MissingPair,
  DuplicatePair,
  NonPositiveValue,
  InvalidMatrix,
  // priority
  NoConvergence,
  MissingRI,
  DegenerateWeights,
  // group
  EmptyPanel,
  LabelMismatch,
  ZeroWeight,
  OrderMismatch,
  // hierarchy
  ShapeMismatch,
  UnknownAlternative,
  OverlappingGroups,
  InvalidHierarchy,
  // delphi
  PreviousRoundOpen,
  MaxRoundsExceeded,
  RoundClosed,
  UnknownExpert,
  UnknownItem,
  NoVotes,
  NoOpenRound,
  InvalidPanel,
  // ri-mc
  UnsupportedOrder,
  // io
  SchemaViolation,
  DanglingReference,
  VersionUnsupported,
  BadMagnitude,
  Io,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so
/// callers (CLI exit codes, HTTP statuses) can branch without parsing text.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ahp
