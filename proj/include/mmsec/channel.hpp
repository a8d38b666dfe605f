#pragma once

// Geometric (limited-scattering) mmWave channel model with a scatterer pool
// shared between the legitimate receiver and the eavesdropper.

#include <cstddef>
#include <vector>

#include "mmsec/linalg.hpp"
#include "mmsec/random.hpp"

namespace mmsec {

/// Uniform linear array: element count and spacing in wavelengths.
class UlaGeometry {
 public:
  explicit UlaGeometry(int num_antennas, double spacing_over_wavelength = 0.5);

  int num_antennas() const noexcept { return num_antennas_; }
  double spacing() const noexcept { return spacing_; }

  bool operator==(const UlaGeometry&) const = default;

 private:
  int num_antennas_;
  double spacing_;
};

/// Unit-norm ULA response: element k is exp(j 2pi (d/lambda) k sin(angle)) / sqrt(N).
CVector array_response(const UlaGeometry& geometry, double angle);

enum class Receiver { Bob, Eve };

/// One physical scatterer. Its departure angle at Alice is common to every
/// receiver that uses it; arrival angles differ per receiver.
struct Scatterer {
  double aod_at_alice;
  double aoa_at_bob;
  double aoa_at_eve;
};

struct PathCountRange {
  int min;
  int max;
};

struct ScattererPool {
  std::vector<Scatterer> scatterers;
  std::vector<std::size_t> bob_paths;  // ascending, duplicate-free
  std::vector<std::size_t> eve_paths;

  const std::vector<std::size_t>& paths(Receiver r) const {
    return r == Receiver::Bob ? bob_paths : eve_paths;
  }
};

/// Draws pool_size scatterers with i.i.d. uniform angles on [0, 2pi), then an
/// independent uniformly random subset for each receiver whose size is
/// uniform over `path_counts`. Throws InvalidRange when the range is empty,
/// non-positive or exceeds the pool.
ScattererPool draw_scatterer_pool(RandomStream& rng, int pool_size, PathCountRange path_counts);

struct ChannelRealization {
  CMatrix matrix;  // N_rx x N_tx
  CVector path_gains;
  std::vector<double> aods;
  std::vector<double> aoas;
  double path_loss;
  UlaGeometry tx_geometry;
  UlaGeometry rx_geometry;

  Index num_paths() const { return path_gains.size(); }
};

/// Deterministic assembly of
///   H = sqrt(N_tx N_rx / path_loss) * sum_l gain_l a_rx(aoa_l) a_tx(aod_l)^H.
ChannelRealization assemble_channel(const UlaGeometry& tx, const UlaGeometry& rx,
                                    std::vector<double> aods, std::vector<double> aoas,
                                    CVector gains, double path_loss);

/// Realizes the channel seen by `receiver` through its selected scatterers,
/// drawing each path gain from CN(0, 1).
ChannelRealization realize_channel(const ScattererPool& pool, Receiver receiver,
                                   const UlaGeometry& tx, const UlaGeometry& rx,
                                   double path_loss, RandomStream& rng);

}  // namespace mmsec
