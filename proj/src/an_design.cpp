#include "mmsec/an_design.hpp"

#include <algorithm>
#include <cmath>

#include "mmsec/error.hpp"

namespace mmsec {

QosPower min_power_for_qos(const CMatrix& h_bob, const DesignResult& design, LinkNoise noise,
                           double qos, double power_cap, double rel_tol) {
  if (!(qos >= 0.0)) throw Error(ErrorKind::InvalidArgument, "QoS target must be nonnegative");
  if (!(rel_tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "tolerance must be positive");
  if (!(power_cap > 0.0)) throw Error(ErrorKind::InvalidArgument, "power cap must be positive");

  const CMatrix f = design.precoder.combined();
  const CMatrix w = design.combiner.combined();
  if (h_bob.cols() != f.rows() || h_bob.rows() != w.rows()) {
    throw Error(ErrorKind::DimensionMismatch, "design does not match H_b");
  }
  const CMatrix gain = w.adjoint() * h_bob * f;
  const CMatrix noise_cov = noise.variance * (w.adjoint() * w);
  const double streams = static_cast<double>(f.cols());
  auto rate = [&](double power) { return whitened_log2_det(gain, noise_cov, power / streams); };

  if (qos == 0.0) return {0.0, true};
  if (rate(power_cap) < qos) return {power_cap, false};

  // R_b is increasing in P_s: keep rate(hi) >= qos > rate(lo).
  double lo = 0.0;
  double hi = power_cap;
  for (int it = 0; it < kBisectionMaxIter && hi - lo > rel_tol * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (rate(mid) >= qos) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return {hi, true};
}

CMatrix an_precoder(const CMatrix& effective_channel, const CMatrix& analog_precoder,
                    const TransmitConfig& tx) {
  const Index n_rf = tx.num_rf_chains;
  const Index n_s = tx.num_streams;
  if (n_s >= n_rf) {
    throw Error(ErrorKind::NoAnDimensions, "artificial noise needs N_RF > N_s");
  }
  if (effective_channel.rows() != n_rf || effective_channel.cols() != n_rf ||
      analog_precoder.cols() != n_rf) {
    throw Error(ErrorKind::DimensionMismatch, "effective channel must be N_RF x N_RF");
  }
  Eigen::JacobiSVD<CMatrix> svd(effective_channel, Eigen::ComputeFullU | Eigen::ComputeFullV);
  CMatrix fw = svd.matrixV().rightCols(n_rf - n_s);
  const double norm = (analog_precoder * fw).norm();
  if (!(norm > 0.0)) {
    throw Error(ErrorKind::ZeroPrecoder, "AN precoder vanishes through the analog stage");
  }
  fw /= norm;
  return fw;
}

AnDesignResult design_unknown_csi(const CMatrix& h_bob, const CodebookPair& codebooks,
                                  const TransmitConfig& tx, LinkNoise noise_bob, double qos) {
  if (tx.num_streams >= tx.num_rf_chains) {
    throw Error(ErrorKind::NoAnDimensions, "artificial noise needs N_RF > N_s");
  }
  return design_unknown_csi(h_bob, design_from_start(h_bob, h_bob, codebooks, tx), tx, noise_bob,
                            qos);
}

AnDesignResult design_unknown_csi(const CMatrix& h_bob, DesignResult base,
                                  const TransmitConfig& tx, LinkNoise noise_bob, double qos) {
  tx.validate();
  CMatrix fw = an_precoder(base.effective_channel, base.precoder.analog, tx);
  const QosPower ps = min_power_for_qos(h_bob, base, noise_bob, qos, tx.total_power);
  AnDesignResult out{std::move(base), std::move(fw), ps.power,
                     std::max(tx.total_power - ps.power, 0.0), qos, !ps.feasible};
  return out;
}

namespace {

double an_scale(const AnDesignResult& design, const TransmitConfig& tx) {
  return design.an_power / static_cast<double>(tx.num_rf_chains - tx.num_streams);
}

}  // namespace

double bob_rate_with_an(const CMatrix& h_bob, const AnDesignResult& design, LinkNoise noise,
                        const TransmitConfig& tx) {
  const CMatrix w = design.base.combiner.combined();
  const CMatrix gain = w.adjoint() * h_bob * design.base.precoder.combined();
  const CMatrix leak = w.adjoint() * h_bob * design.an_transmit_matrix();
  const CMatrix cov =
      noise.variance * (w.adjoint() * w) + an_scale(design, tx) * (leak * leak.adjoint());
  return whitened_log2_det(gain, cov, design.signal_power / tx.num_streams);
}

double eve_rate_with_an(const CMatrix& h_eve, const AnDesignResult& design, LinkNoise noise,
                        const TransmitConfig& tx) {
  const CMatrix gain = h_eve * design.base.precoder.combined();
  const CMatrix jam = h_eve * design.an_transmit_matrix();
  const CMatrix cov = noise.variance * CMatrix::Identity(h_eve.rows(), h_eve.rows()) +
                      an_scale(design, tx) * (jam * jam.adjoint());
  return whitened_log2_det(gain, cov, design.signal_power / tx.num_streams);
}

}  // namespace mmsec
