#ifndef SPDSPHERE_ERROR_HPP
#define SPDSPHERE_ERROR_HPP

#include <stdexcept>
#include <string>

namespace spdsphere {

enum class ErrorCode {
  InvalidDimension,
  OutOfRange,
  UnsupportedDegree,
  InvalidParameters,
  Unsupported,
  InvalidConfiguration,
  InvalidGenerators,
  SamplingFailed,
  NotApplicable,
  WrongCertifier,
  NumericalError,
  SpecError,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidDimension: return "invalid-dimension";
    case ErrorCode::OutOfRange: return "out-of-range";
    case ErrorCode::UnsupportedDegree: return "unsupported-degree";
    case ErrorCode::InvalidParameters: return "invalid-parameters";
    case ErrorCode::Unsupported: return "unsupported";
    case ErrorCode::InvalidConfiguration: return "invalid-configuration";
    case ErrorCode::InvalidGenerators: return "invalid-generators";
    case ErrorCode::SamplingFailed: return "sampling-failed";
    case ErrorCode::NotApplicable: return "not-applicable";
    case ErrorCode::WrongCertifier: return "wrong-certifier";
    case ErrorCode::NumericalError: return "numerical-error";
    case ErrorCode::SpecError: return "spec-error";
  }
  return "unknown";
}

/// Single exception type for the library; callers branch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace spdsphere

#endif  // SPDSPHERE_ERROR_HPP
