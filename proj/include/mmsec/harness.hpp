#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "mmsec/beamforming.hpp"
#include "mmsec/channel.hpp"
#include "mmsec/config.hpp"

namespace mmsec {

enum class XKind { SnrDb, Qos };

struct SecrecyResult {
  std::uint64_t trial_id = 0;
  Algorithm algorithm = Algorithm::KnownCsi;
  XKind x_kind = XKind::SnrDb;
  double x_value = 0.0;
  double rate_bob = 0.0;
  double rate_eve = 0.0;
  double secrecy_rate = 0.0;
  bool infeasible = false;
  // Data-stream power actually used. Diagnostic only; not serialized.
  double signal_power = 0.0;

  bool operator==(const SecrecyResult&) const = default;
};

/// The channel pair shared by every algorithm and grid point of one trial.
struct TrialChannels {
  ScattererPool pool;
  ChannelRealization bob;
  ChannelRealization eve;
};

TrialChannels draw_trial(const ExperimentConfig& config, std::uint64_t trial_id);

CodebookPair make_codebooks(const ExperimentConfig& config);

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

/// One row per (trial, snr, algorithm). Noise variances are 1, so the SNR
/// sets the total power. Output is sorted and independent of `threads`
/// (0 = hardware concurrency). Throws ConfigInvalid with diagnostics.
std::vector<SecrecyResult> run_snr_sweep(const ExperimentConfig& config, int threads = 1);

/// One row per (trial, qos, algorithm) at total power qos_snr_db. Requires
/// unknown-csi-an in the algorithm set; other algorithms are evaluated at
/// full power without AN and repeated across the qos grid.
std::vector<SecrecyResult> run_qos_sweep(const ExperimentConfig& config, int threads = 1);

/// Orders rows by (algorithm tag, x_value, trial_id).
void sort_results(std::vector<SecrecyResult>& results);

}  // namespace mmsec
