#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace expsum {

enum class ErrorKind {
  // series_model
  EmptySeries,
  NonIncreasingAbscissa,
  NonFiniteValue,
  UnknownFixture,
  // triangle_smooth
  InvalidConfig,
  SeriesTooShort,
  // linalg
  DimensionMismatch,
  SingularMatrix,
  RankDeficient,
  InvalidPolynomial,
  NoConvergence,
  ZeroNode,
  // prony
  InvalidModel,
  InvalidOptions,
  SingularPredictionSystem,
  ZeroRoot,
  RepeatedRoot,
  NodeMismatch,
  UnpairedTerm,
  // metrics
  InvalidSpec,
  // io
  ParseError,
  IoError,
};

constexpr std::string_view error_name(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::EmptySeries: return "EmptySeries";
    case ErrorKind::NonIncreasingAbscissa: return "NonIncreasingAbscissa";
    case ErrorKind::NonFiniteValue: return "NonFiniteValue";
    case ErrorKind::UnknownFixture: return "UnknownFixture";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
    case ErrorKind::SeriesTooShort: return "SeriesTooShort";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::SingularMatrix: return "SingularMatrix";
    case ErrorKind::RankDeficient: return "RankDeficient";
    case ErrorKind::InvalidPolynomial: return "InvalidPolynomial";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::ZeroNode: return "ZeroNode";
    case ErrorKind::InvalidModel: return "InvalidModel";
    case ErrorKind::InvalidOptions: return "InvalidOptions";
    case ErrorKind::SingularPredictionSystem: return "SingularPredictionSystem";
    case ErrorKind::ZeroRoot: return "ZeroRoot";
    case ErrorKind::RepeatedRoot: return "RepeatedRoot";
    case ErrorKind::NodeMismatch: return "NodeMismatch";
    case ErrorKind::UnpairedTerm: return "UnpairedTerm";
    case ErrorKind::InvalidSpec: return "InvalidSpec";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

/// Every failure in the library is reported as an Error carrying a kind.
/// what() is "<KindName>: <detail>".
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(error_name(kind)) + ": " + detail),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }
  std::string_view name() const noexcept { return error_name(kind_); }

 private:
  ErrorKind kind_;
};

}  // namespace expsum
