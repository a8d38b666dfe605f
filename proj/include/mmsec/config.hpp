#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mmsec {

enum class Algorithm {
  KnownCsi,
  UnknownCsiAn,
  HybridNoPls,
  FullDigitalGed,
  FullDigitalNoPls,
};

std::string_view to_string(Algorithm algorithm) noexcept;
std::optional<Algorithm> parse_algorithm(std::string_view tag) noexcept;

/// Scenario for one Monte-Carlo experiment. The defaults are the desk-scale
/// setup (32-element arrays, 5-bit codebooks); full_scale() returns the
/// 192-element / 7-bit setup.
struct ExperimentConfig {
  int antennas_alice = 32;
  int antennas_bob = 32;
  int antennas_eve = 32;
  double element_spacing = 0.5;
  int rf_chains = 2;
  int streams = 2;
  int codebook_bits = 5;
  int pool_size = 20;
  int path_count_min = 3;
  int path_count_max = 8;
  double path_loss_bob = 1.0;
  double path_loss_eve = 1.0;
  std::vector<double> snr_grid_db{-10.0, 0.0, 10.0};
  std::vector<double> qos_grid{0.0, 2.0, 4.0, 6.0, 8.0, 10.0, 12.0};
  double qos_snr_db = 10.0;  // fixed total power for qos sweeps
  double an_qos = 4.0;       // rate target used by unknown-csi-an inside snr sweeps
  int num_trials = 100;
  std::uint64_t seed = 1;
  std::vector<Algorithm> algorithms{Algorithm::KnownCsi, Algorithm::HybridNoPls,
                                    Algorithm::FullDigitalGed, Algorithm::FullDigitalNoPls};

  static ExperimentConfig full_scale();
};

enum class SweepKind { Snr, Qos };

/// Field-level diagnostics; empty when the configuration is usable for the
/// given sweep.
std::vector<std::string> validate(const ExperimentConfig& config, SweepKind kind);

/// Applies one `key = value` assignment. Throws ConfigInvalid on an unknown
/// key or malformed value.
void apply_setting(ExperimentConfig& config, std::string_view key, std::string_view value);

/// Parses the plain-text config format: one `key = value` per line, `#`
/// starts a comment, list values are comma separated. Keys not present keep
/// their defaults.
ExperimentConfig parse_config(std::string_view text);

ExperimentConfig load_config(const std::filesystem::path& path);

/// Renders every key in the format accepted by parse_config.
std::string format_config(const ExperimentConfig& config);

}  // namespace mmsec
