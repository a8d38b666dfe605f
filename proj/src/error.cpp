#include "mmsec/error.hpp"

namespace mmsec {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::InvalidRange: return "invalid-range";
    case ErrorKind::DimensionMismatch: return "dimension-mismatch";
    case ErrorKind::EmptyPathSet: return "empty-path-set";
    case ErrorKind::SingularNoiseCovariance: return "singular-noise-covariance";
    case ErrorKind::ZeroPrecoder: return "zero-precoder";
    case ErrorKind::DegenerateResidual: return "degenerate-residual";
    case ErrorKind::NoAnDimensions: return "no-an-dimensions";
    case ErrorKind::PencilSolverFailure: return "pencil-solver-failure";
    case ErrorKind::ConfigInvalid: return "config-invalid";
    case ErrorKind::IoFailure: return "io-failure";
  }
  return "unknown";
}

}  // namespace mmsec
