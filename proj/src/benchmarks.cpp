#include "mmsec/benchmarks.hpp"

#include <algorithm>
#include <cmath>

#include "mmsec/error.hpp"

namespace mmsec {

namespace {

CMatrix left_singular_vectors(const CMatrix& m, Index count) {
  Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeThinU);
  return svd.matrixU().leftCols(count);
}

}  // namespace

FullDigitalDesign full_digital_no_pls(const CMatrix& h_bob, const TransmitConfig& tx) {
  const Index n_s = tx.num_streams;
  if (n_s < 1 || n_s > std::min(h_bob.rows(), h_bob.cols())) {
    throw Error(ErrorKind::InvalidArgument, "N_s must not exceed min(N_a, N_b)");
  }
  Eigen::BDCSVD<CMatrix> svd(h_bob, Eigen::ComputeThinU | Eigen::ComputeThinV);
  CMatrix f = svd.matrixV().leftCols(n_s);
  f *= std::sqrt(static_cast<double>(n_s)) / f.norm();
  return FullDigitalDesign{std::move(f), svd.matrixU().leftCols(n_s), RVector{}};
}

FullDigitalDesign full_digital_ged(const CMatrix& h_bob, const CMatrix& h_eve,
                                   const TransmitConfig& tx, LinkNoise noise_bob,
                                   LinkNoise noise_eve) {
  const Index n_a = h_bob.cols();
  const Index n_s = tx.num_streams;
  if (h_eve.cols() != n_a) {
    throw Error(ErrorKind::DimensionMismatch, "Bob and Eve channels differ in transmit antennas");
  }
  if (n_s < 1 || n_s > n_a || n_s > h_bob.rows()) {
    throw Error(ErrorKind::InvalidArgument, "N_s must not exceed the array sizes");
  }
  if (!(noise_bob.variance > 0.0) || !(noise_eve.variance > 0.0)) {
    throw Error(ErrorKind::PencilSolverFailure, "noise variances must be positive");
  }

  const double cb = tx.total_power / (n_s * noise_bob.variance);
  const double ce = tx.total_power / (n_s * noise_eve.variance);
  const CMatrix id = CMatrix::Identity(n_a, n_a);
  const CMatrix a = id + cb * (h_bob.adjoint() * h_bob);
  const CMatrix b = id + ce * (h_eve.adjoint() * h_eve);

  Eigen::GeneralizedSelfAdjointEigenSolver<CMatrix> ges(a, b,
                                                        Eigen::ComputeEigenvectors | Eigen::Ax_lBx);
  if (ges.info() != Eigen::Success) {
    throw Error(ErrorKind::PencilSolverFailure, "generalized eigensolver did not converge");
  }

  // Eigenvalues come back ascending; take the dominant ones first.
  const RVector ascending = ges.eigenvalues();
  const RVector eigenvalues = ascending.reverse();
  CMatrix dominant(n_a, n_s);
  for (Index k = 0; k < n_s; ++k) {
    dominant.col(k) = ges.eigenvectors().col(n_a - 1 - k);
  }

  Eigen::HouseholderQR<CMatrix> qr(dominant);
  CMatrix f = qr.householderQ() * CMatrix::Identity(n_a, n_s);
  f *= std::sqrt(static_cast<double>(n_s)) / f.norm();
  CMatrix w = left_singular_vectors(h_bob * f, n_s);
  return FullDigitalDesign{std::move(f), std::move(w), eigenvalues};
}

DesignResult hybrid_no_pls(const CMatrix& h_bob, const CodebookPair& codebooks,
                           const TransmitConfig& tx) {
  return design_from_start(h_bob, h_bob, codebooks, tx);
}

}  // namespace mmsec
