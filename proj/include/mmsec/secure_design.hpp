#pragma once

// Known-eavesdropper-CSI hybrid design: project Eve's departure subspace out
// of Bob's channel, pick analog beam pairs one RF chain at a time with
// Gram-Schmidt deflation, then run an SVD baseband stage.

#include <vector>

#include "mmsec/beamforming.hpp"

namespace mmsec {

/// Residual norm below which a selected beam counts as linearly dependent on
/// the components accepted so far.
inline constexpr double kDegenerateResidual = 1e-12;

struct BeamPair {
  Index precoder_index;
  Index combiner_index;
  double gain;
};

struct DeflationState {
  CMatrix current_channel;
  std::vector<CVector> tx_components;  // p_1 .. p_{i-1}, orthonormal
  std::vector<CVector> rx_components;  // q_1 .. q_{i-1}, orthonormal
};

struct DesignResult {
  HybridPrecoder precoder;
  HybridCombiner combiner;
  CMatrix effective_channel;  // W_RF^H H_b F_RF
  std::vector<BeamPair> selected;
  DeflationState deflation;   // state after the last RF chain
  int fallbacks = 0;          // beams rejected as linearly dependent
};

/// H_b (I - V_e V_e^H), with V_e the right singular vectors of H_e above the
/// rank tolerance. A zero H_e leaves H_b untouched.
CMatrix eve_nullspace_projection(const CMatrix& h_bob, const CMatrix& h_eve,
                                 double rank_tolerance = kRankTolerance);

/// argmax over (w, f) of |w^H H f|. Scan order is combiner index then
/// precoder index, and a later pair only wins when it beats the incumbent by
/// more than a 1e-12 relative margin, so (near-)ties resolve to the lowest
/// (combiner, precoder) indices.
BeamPair select_beam_pair(const CMatrix& channel, const AnalogCodebook& precoder_codebook,
                          const AnalogCodebook& combiner_codebook);

/// Same as above but skipping excluded codebook entries. Masks must be empty
/// or sized to the corresponding codebook. Throws DegenerateResidual when
/// every entry of either codebook is excluded.
BeamPair select_beam_pair(const CMatrix& channel, const AnalogCodebook& precoder_codebook,
                          const AnalogCodebook& combiner_codebook,
                          const std::vector<bool>& precoder_excluded,
                          const std::vector<bool>& combiner_excluded);

/// Orthonormalizes (f, w) against the accepted components and applies
///   H_{i+1} = (I - q q^H) H_i (I - p p^H).
/// Throws DegenerateResidualError (flagging the failing side) when a residual
/// norm falls below kDegenerateResidual.
DeflationState deflate(DeflationState state, const CVector& f_star, const CVector& w_star);

struct DigitalStage {
  CMatrix precoder;  // first N_s right singular vectors of H_eff
  CMatrix combiner;  // first N_s left singular vectors of H_eff
};

DigitalStage digital_stage(const CMatrix& effective_channel, const TransmitConfig& tx);

/// Beam selection and baseband stage starting from an arbitrary H_1. The
/// effective channel and digital stage always use `h_bob`.
DesignResult design_from_start(const CMatrix& h_start, const CMatrix& h_bob,
                               const CodebookPair& codebooks, const TransmitConfig& tx);

DesignResult design_known_csi(const CMatrix& h_bob, const CMatrix& h_eve,
                              const CodebookPair& codebooks, const TransmitConfig& tx,
                              double rank_tolerance = kRankTolerance);

}  // namespace mmsec
