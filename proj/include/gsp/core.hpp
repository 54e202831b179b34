#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include <Eigen/Core>

namespace gsp {

using Index = Eigen::Index;

template <class Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <class Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using VectorXd = Vector<double>;
using MatrixXd = Matrix<double>;

enum class ErrorCode {
  IndexOutOfRange,
  DuplicateEdge,
  NonPositiveWeight,
  SelfLoop,
  DimensionMismatch,
  InvalidProbability,
  InvalidK,
  TooLargeForOracle,
  FilterDomainError,
  ZeroStartVector,
  InvalidCount,
  EmptySpectrum,
  DegenerateSpectrum,
  ParseError,
  InvalidConfig,
  IoError,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::DuplicateEdge: return "DuplicateEdge";
    case ErrorCode::NonPositiveWeight: return "NonPositiveWeight";
    case ErrorCode::SelfLoop: return "SelfLoop";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InvalidProbability: return "InvalidProbability";
    case ErrorCode::InvalidK: return "InvalidK";
    case ErrorCode::TooLargeForOracle: return "TooLargeForOracle";
    case ErrorCode::FilterDomainError: return "FilterDomainError";
    case ErrorCode::ZeroStartVector: return "ZeroStartVector";
    case ErrorCode::InvalidCount: return "InvalidCount";
    case ErrorCode::EmptySpectrum: return "EmptySpectrum";
    case ErrorCode::DegenerateSpectrum: return "DegenerateSpectrum";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

/// Every failure in the library is reported as a gsp::Error carrying a code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline void require_same_size(Index expected, Index actual, const char* what) {
  if (expected != actual) {
    throw Error(ErrorCode::DimensionMismatch, std::string(what) + ": expected length " +
                                                  std::to_string(expected) + ", got " +
                                                  std::to_string(actual));
  }
}

}  // namespace gsp
