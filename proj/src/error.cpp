#include "factlab/error.hpp"

namespace factlab {

std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::NotHomogeneous: return "NotHomogeneous";
    case ErrorCode::UnknownVariable: return "UnknownVariable";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::BadField: return "BadField";
    case ErrorCode::NotSingular: return "NotSingular";
    case ErrorCode::CharTooSmall: return "CharTooSmall";
    case ErrorCode::BadChart: return "BadChart";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::CenterHit: return "CenterHit";
    case ErrorCode::FieldTooSmall: return "FieldTooSmall";
    case ErrorCode::CharDividesDegree: return "CharDividesDegree";
    case ErrorCode::DegenerateDraw: return "DegenerateDraw";
    case ErrorCode::NotInSet: return "NotInSet";
    case ErrorCode::Overlap: return "Overlap";
    case ErrorCode::GVanishesOnDelta: return "GVanishesOnDelta";
    case ErrorCode::GMissesLambda: return "GMissesLambda";
    case ErrorCode::DegreeMismatch: return "DegreeMismatch";
    case ErrorCode::TooFew: return "TooFew";
    case ErrorCode::WrongAmbient: return "WrongAmbient";
    case ErrorCode::LocusMismatch: return "LocusMismatch";
    case ErrorCode::XiTooSmall: return "XiTooSmall";
    case ErrorCode::BadParams: return "BadParams";
    case ErrorCode::DuplicatePoint: return "DuplicatePoint";
    case ErrorCode::BadCertificate: return "BadCertificate";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::TooLarge:
      return 3;
    case ErrorCode::DegenerateDraw:
    case ErrorCode::FieldTooSmall:
    case ErrorCode::CenterHit:
      return 4;
    case ErrorCode::CharTooSmall:
    case ErrorCode::CharDividesDegree:
      return 5;
    case ErrorCode::NotSingular:
    case ErrorCode::LocusMismatch:
    case ErrorCode::Overlap:
    case ErrorCode::GVanishesOnDelta:
    case ErrorCode::GMissesLambda:
    case ErrorCode::BadCertificate:
    case ErrorCode::BadChart:
      return 6;
    default:
      return 2;
  }
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}

}  // namespace factlab
