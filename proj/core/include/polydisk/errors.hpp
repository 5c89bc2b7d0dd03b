#pragma once

#include <stdexcept>
#include <string>

namespace polydisk {

enum class ErrorKind {
  NotHermitian,
  NotPositiveDefinite,
  NotToeplitz,
  SingularPivot,
  SingularBlock,
  DimensionMismatch,
  OutsideDisk,
  InvalidOrder,
  InvalidCoefficient,
  InvalidShape,
  InvalidWeights,
  EmptySeries,
  OrderTooLarge,
  ZeroSignal,
  TooFewPoints,
  TooManyClusters,
  LengthMismatch,
  InvalidPermutation,
  InvalidLabel,
  MalformedFile,
  NonFiniteValue,
  ConfigError,
  IoError,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorKind::NotToeplitz: return "NotToeplitz";
    case ErrorKind::SingularPivot: return "SingularPivot";
    case ErrorKind::SingularBlock: return "SingularBlock";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::OutsideDisk: return "OutsideDisk";
    case ErrorKind::InvalidOrder: return "InvalidOrder";
    case ErrorKind::InvalidCoefficient: return "InvalidCoefficient";
    case ErrorKind::InvalidShape: return "InvalidShape";
    case ErrorKind::InvalidWeights: return "InvalidWeights";
    case ErrorKind::EmptySeries: return "EmptySeries";
    case ErrorKind::OrderTooLarge: return "OrderTooLarge";
    case ErrorKind::ZeroSignal: return "ZeroSignal";
    case ErrorKind::TooFewPoints: return "TooFewPoints";
    case ErrorKind::TooManyClusters: return "TooManyClusters";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::InvalidPermutation: return "InvalidPermutation";
    case ErrorKind::InvalidLabel: return "InvalidLabel";
    case ErrorKind::MalformedFile: return "MalformedFile";
    case ErrorKind::NonFiniteValue: return "NonFiniteValue";
    case ErrorKind::ConfigError: return "ConfigError";
    case ErrorKind::IoError: return "IoError";
  }
  return "UnknownError";
}

/// Library-wide exception type; carries a machine-checkable kind next to the
/// human-readable message.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

inline void require(bool condition, ErrorKind kind, const std::string& message) {
  if (!condition) fail(kind, message);
}

}  // namespace polydisk
