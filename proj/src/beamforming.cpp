#include "mmsec/beamforming.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "mmsec/error.hpp"

namespace mmsec {

double AnalogCodebook::angle(Index j) const {
  return 2.0 * std::numbers::pi * static_cast<double>(j + 1) / static_cast<double>(size());
}

AnalogCodebook build_codebook(const UlaGeometry& geometry, int bits) {
  if (bits < 1 || bits > 20) {
    throw Error(ErrorKind::InvalidArgument,
                "codebook resolution must be 1..20 bits, got " + std::to_string(bits));
  }
  const Index size = Index{1} << bits;
  AnalogCodebook cb{geometry, bits, CMatrix(geometry.num_antennas(), size)};
  for (Index j = 0; j < size; ++j) {
    cb.vectors.col(j) = array_response(geometry, cb.angle(j));
  }
  return cb;
}

void TransmitConfig::validate() const {
  if (!(total_power > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "transmit power must be positive");
  }
  if (num_streams < 1 || num_rf_chains < 1) {
    throw Error(ErrorKind::InvalidArgument, "stream and RF chain counts must be positive");
  }
  if (num_streams > num_rf_chains) {
    throw Error(ErrorKind::InvalidArgument, "N_s = " + std::to_string(num_streams) +
                                                " exceeds N_RF = " + std::to_string(num_rf_chains));
  }
}

double log2_det_identity_plus(const CMatrix& hermitian_psd) {
  const Index n = hermitian_psd.rows();
  CMatrix m = CMatrix::Identity(n, n) + 0.5 * (hermitian_psd + hermitian_psd.adjoint());
  Eigen::LLT<CMatrix> llt(m);
  if (llt.info() != Eigen::Success) {
    throw Error(ErrorKind::InvalidArgument, "I + A is not positive definite");
  }
  const auto& l = llt.matrixLLT();
  double acc = 0.0;
  for (Index i = 0; i < n; ++i) {
    acc += std::log2(l(i, i).real());
  }
  return std::max(0.0, 2.0 * acc);
}

double whitened_log2_det(const CMatrix& signal_gain, const CMatrix& covariance, double scale) {
  if (covariance.rows() != covariance.cols() || covariance.rows() != signal_gain.rows()) {
    throw Error(ErrorKind::DimensionMismatch, "covariance does not match signal dimension");
  }
  const CMatrix c = 0.5 * (covariance + covariance.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(c, Eigen::EigenvaluesOnly);
  const RVector& ev = eig.eigenvalues();
  if (ev.size() == 0 || !(ev.maxCoeff() > 0.0) || ev.minCoeff() <= 1e-12 * ev.maxCoeff()) {
    throw Error(ErrorKind::SingularNoiseCovariance,
                "noise covariance after combining is rank deficient");
  }
  Eigen::LLT<CMatrix> llt(c);
  if (llt.info() != Eigen::Success) {
    throw Error(ErrorKind::SingularNoiseCovariance, "noise covariance is not positive definite");
  }
  const CMatrix m = llt.matrixL().solve(signal_gain);
  // det(I + s M M^H) = det(I + s M^H M); use the smaller Gram matrix.
  if (m.cols() < m.rows()) {
    return log2_det_identity_plus(scale * (m.adjoint() * m));
  }
  return log2_det_identity_plus(scale * (m * m.adjoint()));
}

namespace {

void check_link_dims(const CMatrix& channel, const CMatrix& precoder, const CMatrix* combiner,
                     const TransmitConfig& tx) {
  if (channel.cols() != precoder.rows()) {
    throw Error(ErrorKind::DimensionMismatch, "precoder rows do not match transmit antennas");
  }
  if (combiner != nullptr && combiner->rows() != channel.rows()) {
    throw Error(ErrorKind::DimensionMismatch, "combiner rows do not match receive antennas");
  }
  if (precoder.cols() != tx.num_streams) {
    throw Error(ErrorKind::DimensionMismatch, "precoder columns do not match N_s");
  }
}

}  // namespace

double mutual_info_rate(const CMatrix& channel, const CMatrix& precoder, const CMatrix& combiner,
                        LinkNoise noise, const TransmitConfig& tx) {
  check_link_dims(channel, precoder, &combiner, tx);
  const CMatrix gain = combiner.adjoint() * channel * precoder;
  const CMatrix noise_cov = noise.variance * (combiner.adjoint() * combiner);
  return whitened_log2_det(gain, noise_cov, tx.total_power / tx.num_streams);
}

double mutual_info_rate(const ChannelRealization& channel, const HybridPrecoder& precoder,
                        const HybridCombiner& combiner, LinkNoise noise, const TransmitConfig& tx) {
  return mutual_info_rate(channel.matrix, precoder.combined(), combiner.combined(), noise, tx);
}

double eve_rate_upper_bound(const CMatrix& channel, const CMatrix& precoder, LinkNoise noise,
                            const TransmitConfig& tx) {
  check_link_dims(channel, precoder, nullptr, tx);
  const CMatrix g = channel * precoder;
  const double scale = tx.total_power / (tx.num_streams * noise.variance);
  return log2_det_identity_plus(scale * (g.adjoint() * g));
}

double eve_rate_upper_bound(const ChannelRealization& channel, const HybridPrecoder& precoder,
                            LinkNoise noise, const TransmitConfig& tx) {
  return eve_rate_upper_bound(channel.matrix, precoder.combined(), noise, tx);
}

double secrecy_rate(double rate_bob, double rate_eve) {
  if (rate_bob < 0.0 || rate_eve < 0.0) {
    throw Error(ErrorKind::InvalidArgument, "rates must be nonnegative");
  }
  return std::max(rate_bob - rate_eve, 0.0);
}

TruncatedSvd truncated_svd(const CMatrix& matrix, double rank_tolerance) {
  if (matrix.size() == 0) {
    throw Error(ErrorKind::InvalidArgument, "SVD of an empty matrix");
  }
  Eigen::BDCSVD<CMatrix> svd(matrix, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RVector& s = svd.singularValues();
  Index keep = 0;
  if (s.size() > 0 && s(0) > 0.0) {
    const double cutoff = rank_tolerance * s(0);
    while (keep < s.size() && s(keep) > cutoff) {
      ++keep;
    }
  }
  return TruncatedSvd{svd.matrixU().leftCols(keep), s.head(keep), svd.matrixV().leftCols(keep)};
}

HybridPrecoder normalize_digital(HybridPrecoder precoder, double target) {
  const double norm = (precoder.analog * precoder.digital).norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw Error(ErrorKind::ZeroPrecoder, "cannot normalize a zero precoder");
  }
  precoder.digital *= std::sqrt(target) / norm;
  return precoder;
}

}  // namespace mmsec
