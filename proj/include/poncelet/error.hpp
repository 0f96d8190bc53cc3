#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace poncelet {

enum class ErrorCode {
  InvalidArgument,
  PointInsideConic,
  DegenerateTriangle,
  InvalidAspect,
  FreeParamOutOfRange,
  UnknownCenter,
  CenterAtInfinity,
  DegenerateDerived,
  AllSamplesDegenerate,
  InsufficientPoints,
  EmptyScene,
  CorruptBlob,
  UnsupportedVersion,
  OutOfRange,
};

constexpr std::string_view error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::PointInsideConic: return "PointInsideConic";
    case ErrorCode::DegenerateTriangle: return "DegenerateTriangle";
    case ErrorCode::InvalidAspect: return "InvalidAspect";
    case ErrorCode::FreeParamOutOfRange: return "FreeParamOutOfRange";
    case ErrorCode::UnknownCenter: return "UnknownCenter";
    case ErrorCode::CenterAtInfinity: return "CenterAtInfinity";
    case ErrorCode::DegenerateDerived: return "DegenerateDerived";
    case ErrorCode::AllSamplesDegenerate: return "AllSamplesDegenerate";
    case ErrorCode::InsufficientPoints: return "InsufficientPoints";
    case ErrorCode::EmptyScene: return "EmptyScene";
    case ErrorCode::CorruptBlob: return "CorruptBlob";
    case ErrorCode::UnsupportedVersion: return "UnsupportedVersion";
    case ErrorCode::OutOfRange: return "OutOfRange";
  }
  return "Unknown";
}

/// Every failure raised by the engine carries one of the codes above so the
/// CLI and the HTTP layer can report it without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace poncelet
