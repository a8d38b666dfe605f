#pragma once

#include <stdexcept>
#include <string>

namespace mmsec {

enum class ErrorKind {
  InvalidArgument,
  InvalidRange,
  DimensionMismatch,
  EmptyPathSet,
  SingularNoiseCovariance,
  ZeroPrecoder,
  DegenerateResidual,
  NoAnDimensions,
  PencilSolverFailure,
  ConfigInvalid,
  IoFailure,
};

const char* to_string(ErrorKind kind) noexcept;

/// Base exception for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Raised by Gram-Schmidt deflation when a selected beam lies (numerically)
/// in the span of previously accepted components. Flags say which side.
class DegenerateResidualError : public Error {
 public:
  DegenerateResidualError(bool tx_side, bool rx_side, const std::string& what)
      : Error(ErrorKind::DegenerateResidual, what), tx_(tx_side), rx_(rx_side) {}

  bool tx_side() const noexcept { return tx_; }
  bool rx_side() const noexcept { return rx_; }

 private:
  bool tx_;
  bool rx_;
};

}  // namespace mmsec
