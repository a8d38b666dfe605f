#pragma once

// Codebooks, hybrid precoder/combiner containers and the rate metrics used
// to score every design.

#include <vector>

#include "mmsec/channel.hpp"
#include "mmsec/linalg.hpp"

namespace mmsec {

/// Relative singular-value cutoff used for numerical rank decisions.
inline constexpr double kRankTolerance = 1e-9;

/// Steering codebook with 2^bits entries. Column j holds the array response at
/// angle 2*pi*(j + 1) / 2^bits, i.e. the grid i = 1..2^bits stored 0-based.
struct AnalogCodebook {
  UlaGeometry geometry;
  int bits;
  CMatrix vectors;

  Index size() const { return vectors.cols(); }
  double angle(Index j) const;
};

AnalogCodebook build_codebook(const UlaGeometry& geometry, int bits);

struct CodebookPair {
  AnalogCodebook precoder;  // transmit side (Alice)
  AnalogCodebook combiner;  // receive side (Bob)
};

struct HybridPrecoder {
  CMatrix analog;               // N_tx x N_RF, codebook columns
  std::vector<Index> analog_indices;
  CMatrix digital;              // N_RF x N_s

  CMatrix combined() const { return analog * digital; }
};

struct HybridCombiner {
  CMatrix analog;               // N_rx x N_RF
  std::vector<Index> analog_indices;
  CMatrix digital;              // N_RF x N_s

  CMatrix combined() const { return analog * digital; }
};

struct LinkNoise {
  double variance = 1.0;
};

struct TransmitConfig {
  double total_power;
  int num_streams;
  int num_rf_chains;

  /// Throws InvalidArgument unless P > 0, 1 <= N_s <= N_RF.
  void validate() const;
};

/// log2 det(I + A) for Hermitian positive semidefinite A, via Cholesky.
double log2_det_identity_plus(const CMatrix& hermitian_psd);

/// log2 det(I + scale * C^-1 G G^H) where C is a Hermitian positive definite
/// noise-plus-interference covariance and G is the post-combining signal
/// gain. Evaluated through the Cholesky factor of C so the argument stays
/// Hermitian. Throws SingularNoiseCovariance if C is rank deficient.
double whitened_log2_det(const CMatrix& signal_gain, const CMatrix& covariance, double scale);

/// Rate of a linear receiver W over H with transmit matrix F:
///   log2 det(I + P/N_s * R_n^-1 W^H H F F^H H^H W),  R_n = sigma^2 W^H W.
double mutual_info_rate(const CMatrix& channel, const CMatrix& precoder, const CMatrix& combiner,
                        LinkNoise noise, const TransmitConfig& tx);

double mutual_info_rate(const ChannelRealization& channel, const HybridPrecoder& precoder,
                        const HybridCombiner& combiner, LinkNoise noise, const TransmitConfig& tx);

/// Capacity of the eavesdropper link for a fixed transmit matrix, i.e. the
/// rate reached by an optimal receiver:
///   log2 det(I + P/(N_s sigma^2) H F F^H H^H).
/// Upper-bounds mutual_info_rate for every combiner on the same link.
double eve_rate_upper_bound(const CMatrix& channel, const CMatrix& precoder, LinkNoise noise,
                            const TransmitConfig& tx);

double eve_rate_upper_bound(const ChannelRealization& channel, const HybridPrecoder& precoder,
                            LinkNoise noise, const TransmitConfig& tx);

/// [rate_bob - rate_eve]^+. Both inputs must be nonnegative.
double secrecy_rate(double rate_bob, double rate_eve);

struct TruncatedSvd {
  CMatrix left;
  RVector singular_values;  // decreasing
  CMatrix right;

  Index rank() const { return singular_values.size(); }
};

/// Keeps singular triplets with sigma > rank_tolerance * sigma_max. An all-zero
/// matrix yields rank 0.
TruncatedSvd truncated_svd(const CMatrix& matrix, double rank_tolerance = kRankTolerance);

/// Rescales the digital part so that ||F_RF F_BB||_F^2 == target.
HybridPrecoder normalize_digital(HybridPrecoder precoder, double target);

}  // namespace mmsec
