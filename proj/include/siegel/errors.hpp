#ifndef SIEGEL_ERRORS_HPP
#define SIEGEL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace siegel {

enum class ErrorCode {
  NotPositiveDefinite,
  CompositeP,
  OutOfBound,
  BoundTooSmall,
  UnsupportedWeight,
  PNotDividingLevel,
  NotEigenform,
  AllCoefficientsZero,
  PrimeNotInS,
  UnsupportedPrime,
  OddCharacteristic,
  RankUnsupported,
  NormalizationFailure,
  ChecksumMismatch,
  InvalidCharacter,
  InvalidExpansion,
  InvalidInput,
};

inline const char* error_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::CompositeP: return "CompositeP";
    case ErrorCode::OutOfBound: return "OutOfBound";
    case ErrorCode::BoundTooSmall: return "BoundTooSmall";
    case ErrorCode::UnsupportedWeight: return "UnsupportedWeight";
    case ErrorCode::PNotDividingLevel: return "PNotDividingLevel";
    case ErrorCode::NotEigenform: return "NotEigenform";
    case ErrorCode::AllCoefficientsZero: return "AllCoefficientsZero";
    case ErrorCode::PrimeNotInS: return "PrimeNotInS";
    case ErrorCode::UnsupportedPrime: return "UnsupportedPrime";
    case ErrorCode::OddCharacteristic: return "OddCharacteristic";
    case ErrorCode::RankUnsupported: return "RankUnsupported";
    case ErrorCode::NormalizationFailure: return "NormalizationFailure";
    case ErrorCode::ChecksumMismatch: return "ChecksumMismatch";
    case ErrorCode::InvalidCharacter: return "InvalidCharacter";
    case ErrorCode::InvalidExpansion: return "InvalidExpansion";
    case ErrorCode::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

class SiegelError : public std::runtime_error {
 public:
  SiegelError(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& what) {
  throw SiegelError(code, what);
}

}  // namespace siegel

#endif
