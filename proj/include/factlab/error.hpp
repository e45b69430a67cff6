#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace factlab {

enum class ErrorCode {
  SyntaxError,
  NotHomogeneous,
  UnknownVariable,
  FieldMismatch,
  BadField,
  NotSingular,
  CharTooSmall,
  BadChart,
  ZeroVector,
  TooLarge,
  CenterHit,
  FieldTooSmall,
  CharDividesDegree,
  DegenerateDraw,
  NotInSet,
  Overlap,
  GVanishesOnDelta,
  GMissesLambda,
  DegreeMismatch,
  TooFew,
  WrongAmbient,
  LocusMismatch,
  XiTooSmall,
  BadParams,
  DuplicatePoint,
  BadCertificate,
  Io,
};

std::string_view error_name(ErrorCode code);

/// Process exit code for the CLI. Every code maps to exactly one value:
/// 2 input, 3 scan cap, 4 genericity, 5 characteristic, 6 verification.
int exit_code(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace factlab
