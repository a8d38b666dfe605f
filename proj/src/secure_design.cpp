#include "mmsec/secure_design.hpp"

#include <cmath>
#include <string>

#include "mmsec/error.hpp"

namespace mmsec {

namespace {

constexpr double kTieMargin = 1e-12;

// Two classical Gram-Schmidt passes; returns the unnormalized residual.
CVector orthogonal_residual(const CVector& v, const std::vector<CVector>& basis) {
  CVector r = v;
  for (int pass = 0; pass < 2; ++pass) {
    for (const CVector& b : basis) {
      r -= b.dot(r) * b;
    }
  }
  return r;
}

}  // namespace

CMatrix eve_nullspace_projection(const CMatrix& h_bob, const CMatrix& h_eve,
                                 double rank_tolerance) {
  if (h_bob.cols() != h_eve.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "Bob and Eve channels differ in transmit antennas");
  }
  const TruncatedSvd eve = truncated_svd(h_eve, rank_tolerance);
  if (eve.rank() == 0) {
    return h_bob;
  }
  const CMatrix& v = eve.right;
  return h_bob - (h_bob * v) * v.adjoint();
}

BeamPair select_beam_pair(const CMatrix& channel, const AnalogCodebook& precoder_codebook,
                          const AnalogCodebook& combiner_codebook) {
  return select_beam_pair(channel, precoder_codebook, combiner_codebook, {}, {});
}

BeamPair select_beam_pair(const CMatrix& channel, const AnalogCodebook& precoder_codebook,
                          const AnalogCodebook& combiner_codebook,
                          const std::vector<bool>& precoder_excluded,
                          const std::vector<bool>& combiner_excluded) {
  const CMatrix& f = precoder_codebook.vectors;
  const CMatrix& w = combiner_codebook.vectors;
  if (f.cols() == 0 || w.cols() == 0) {
    throw Error(ErrorKind::InvalidArgument, "empty codebook");
  }
  if (channel.rows() != w.rows() || channel.cols() != f.rows()) {
    throw Error(ErrorKind::DimensionMismatch, "codebook dimensions do not match the channel");
  }
  auto excluded = [](const std::vector<bool>& mask, Index j) {
    return !mask.empty() && mask[static_cast<std::size_t>(j)];
  };
  if ((!precoder_excluded.empty() && static_cast<Index>(precoder_excluded.size()) != f.cols()) ||
      (!combiner_excluded.empty() && static_cast<Index>(combiner_excluded.size()) != w.cols())) {
    throw Error(ErrorKind::DimensionMismatch, "exclusion mask does not match codebook size");
  }

  const CMatrix gains = (w.adjoint() * channel) * f;
  bool found = false;
  BeamPair best{0, 0, 0.0};
  for (Index wi = 0; wi < w.cols(); ++wi) {
    if (excluded(combiner_excluded, wi)) continue;
    for (Index fi = 0; fi < f.cols(); ++fi) {
      if (excluded(precoder_excluded, fi)) continue;
      const double g = std::abs(gains(wi, fi));
      if (!found || g > best.gain * (1.0 + kTieMargin)) {
        best = BeamPair{fi, wi, g};
        found = true;
      }
    }
  }
  if (!found) {
    throw DegenerateResidualError(true, true, "every codebook entry has been excluded");
  }
  return best;
}

DeflationState deflate(DeflationState state, const CVector& f_star, const CVector& w_star) {
  if (f_star.size() != state.current_channel.cols() ||
      w_star.size() != state.current_channel.rows()) {
    throw Error(ErrorKind::DimensionMismatch, "beam vectors do not match the channel");
  }
  CVector p = orthogonal_residual(f_star, state.tx_components);
  CVector q = orthogonal_residual(w_star, state.rx_components);
  const double p_norm = p.norm();
  const double q_norm = q.norm();
  const bool tx_bad = !(p_norm >= kDegenerateResidual);
  const bool rx_bad = !(q_norm >= kDegenerateResidual);
  if (tx_bad || rx_bad) {
    throw DegenerateResidualError(tx_bad, rx_bad,
                                  "selected beam lies in the span of earlier components");
  }
  p /= p_norm;
  q /= q_norm;

  CMatrix& h = state.current_channel;
  h -= q * (q.adjoint() * h);
  h -= (h * p) * p.adjoint();
  state.tx_components.push_back(std::move(p));
  state.rx_components.push_back(std::move(q));
  return state;
}

DigitalStage digital_stage(const CMatrix& effective_channel, const TransmitConfig& tx) {
  if (effective_channel.rows() != tx.num_rf_chains ||
      effective_channel.cols() != tx.num_rf_chains) {
    throw Error(ErrorKind::DimensionMismatch, "effective channel must be N_RF x N_RF");
  }
  if (tx.num_streams > tx.num_rf_chains) {
    throw Error(ErrorKind::InvalidArgument, "N_s exceeds N_RF");
  }
  Eigen::JacobiSVD<CMatrix> svd(effective_channel, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return DigitalStage{svd.matrixV().leftCols(tx.num_streams),
                      svd.matrixU().leftCols(tx.num_streams)};
}

DesignResult design_from_start(const CMatrix& h_start, const CMatrix& h_bob,
                               const CodebookPair& codebooks, const TransmitConfig& tx) {
  tx.validate();
  if (h_start.rows() != h_bob.rows() || h_start.cols() != h_bob.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "start channel must have the shape of H_b");
  }
  const AnalogCodebook& fcb = codebooks.precoder;
  const AnalogCodebook& wcb = codebooks.combiner;
  if (fcb.vectors.rows() != h_bob.cols() || wcb.vectors.rows() != h_bob.rows()) {
    throw Error(ErrorKind::DimensionMismatch, "codebook array sizes do not match H_b");
  }

  const Index n_rf = tx.num_rf_chains;
  DesignResult out;
  out.precoder.analog.resize(h_bob.cols(), n_rf);
  out.combiner.analog.resize(h_bob.rows(), n_rf);

  DeflationState state{h_start, {}, {}};
  for (Index i = 0; i < n_rf; ++i) {
    std::vector<bool> f_excluded(static_cast<std::size_t>(fcb.size()), false);
    std::vector<bool> w_excluded(static_cast<std::size_t>(wcb.size()), false);
    for (;;) {
      const BeamPair pair =
          select_beam_pair(state.current_channel, fcb, wcb, f_excluded, w_excluded);
      try {
        state = deflate(state, fcb.vectors.col(pair.precoder_index),
                        wcb.vectors.col(pair.combiner_index));
      } catch (const DegenerateResidualError& e) {
        if (e.tx_side()) f_excluded[static_cast<std::size_t>(pair.precoder_index)] = true;
        if (e.rx_side()) w_excluded[static_cast<std::size_t>(pair.combiner_index)] = true;
        ++out.fallbacks;
        continue;
      }
      out.precoder.analog.col(i) = fcb.vectors.col(pair.precoder_index);
      out.combiner.analog.col(i) = wcb.vectors.col(pair.combiner_index);
      out.precoder.analog_indices.push_back(pair.precoder_index);
      out.combiner.analog_indices.push_back(pair.combiner_index);
      out.selected.push_back(pair);
      break;
    }
  }

  out.deflation = std::move(state);
  out.effective_channel = out.combiner.analog.adjoint() * h_bob * out.precoder.analog;
  DigitalStage digital = digital_stage(out.effective_channel, tx);
  out.precoder.digital = std::move(digital.precoder);
  out.combiner.digital = std::move(digital.combiner);
  out.precoder = normalize_digital(std::move(out.precoder), tx.num_streams);
  return out;
}

DesignResult design_known_csi(const CMatrix& h_bob, const CMatrix& h_eve,
                              const CodebookPair& codebooks, const TransmitConfig& tx,
                              double rank_tolerance) {
  return design_from_start(eve_nullspace_projection(h_bob, h_eve, rank_tolerance), h_bob,
                           codebooks, tx);
}

}  // namespace mmsec
