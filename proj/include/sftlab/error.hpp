#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sftlab {

enum class ErrorCode {
  // malformed input
  Parse,
  IO,
  NotSquare,
  NonBinaryEntry,
  ZeroRowOrColumn,
  DuplicateSymbol,
  UnknownSymbol,
  InvalidWord,
  InvalidPoint,
  TransitionNotRespected,
  RingMismatch,
  DomainMismatch,
  // mathematically well-posed refusals
  NotIrreducible,
  NotMixing,
  EmptyShift,
  ResourceLimit,
  NotFactor,
  NotClosing,
  NotLeftClosing,
  NotAlmostInvertible,
  MagicSymbolUnavailable,
  NotInXPrime,
  FactorizationIncomplete,
  // internal consistency failures
  SignUndecided,
  GapNotCertified,
  CertificateFailure,
  UniquenessViolated,
};

constexpr std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::Parse: return "Parse";
    case ErrorCode::IO: return "IO";
    case ErrorCode::NotSquare: return "NotSquare";
    case ErrorCode::NonBinaryEntry: return "NonBinaryEntry";
    case ErrorCode::ZeroRowOrColumn: return "ZeroRowOrColumn";
    case ErrorCode::DuplicateSymbol: return "DuplicateSymbol";
    case ErrorCode::UnknownSymbol: return "UnknownSymbol";
    case ErrorCode::InvalidWord: return "InvalidWord";
    case ErrorCode::InvalidPoint: return "InvalidPoint";
    case ErrorCode::TransitionNotRespected: return "TransitionNotRespected";
    case ErrorCode::RingMismatch: return "RingMismatch";
    case ErrorCode::DomainMismatch: return "DomainMismatch";
    case ErrorCode::NotIrreducible: return "NotIrreducible";
    case ErrorCode::NotMixing: return "NotMixing";
    case ErrorCode::EmptyShift: return "EmptyShift";
    case ErrorCode::ResourceLimit: return "ResourceLimit";
    case ErrorCode::NotFactor: return "NotFactor";
    case ErrorCode::NotClosing: return "NotClosing";
    case ErrorCode::NotLeftClosing: return "NotLeftClosing";
    case ErrorCode::NotAlmostInvertible: return "NotAlmostInvertible";
    case ErrorCode::MagicSymbolUnavailable: return "MagicSymbolUnavailable";
    case ErrorCode::NotInXPrime: return "NotInXPrime";
    case ErrorCode::FactorizationIncomplete: return "FactorizationIncomplete";
    case ErrorCode::SignUndecided: return "SignUndecided";
    case ErrorCode::GapNotCertified: return "GapNotCertified";
    case ErrorCode::CertificateFailure: return "CertificateFailure";
    case ErrorCode::UniquenessViolated: return "UniquenessViolated";
  }
  return "Unknown";
}

enum class ErrorClass { InvalidInput, DomainRefusal, Internal };

constexpr ErrorClass classify(ErrorCode code) {
  switch (code) {
    case ErrorCode::Parse:
    case ErrorCode::IO:
    case ErrorCode::NotSquare:
    case ErrorCode::NonBinaryEntry:
    case ErrorCode::ZeroRowOrColumn:
    case ErrorCode::DuplicateSymbol:
    case ErrorCode::UnknownSymbol:
    case ErrorCode::InvalidWord:
    case ErrorCode::InvalidPoint:
    case ErrorCode::TransitionNotRespected:
    case ErrorCode::RingMismatch:
    case ErrorCode::DomainMismatch:
      return ErrorClass::InvalidInput;
    case ErrorCode::SignUndecided:
    case ErrorCode::GapNotCertified:
    case ErrorCode::CertificateFailure:
    case ErrorCode::UniquenessViolated:
      return ErrorClass::Internal;
    default:
      return ErrorClass::DomainRefusal;
  }
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(error_name(code)) + ": " + detail),
        code_(code),
        detail_(detail) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& detail) {
  throw Error(code, detail);
}

}  // namespace sftlab
