#include "mmsec/channel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "mmsec/error.hpp"

namespace mmsec {

UlaGeometry::UlaGeometry(int num_antennas, double spacing_over_wavelength)
    : num_antennas_(num_antennas), spacing_(spacing_over_wavelength) {
  if (num_antennas < 1) {
    throw Error(ErrorKind::InvalidArgument, "ULA needs at least one antenna");
  }
  if (!(spacing_over_wavelength > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "ULA element spacing must be positive");
  }
}

CVector array_response(const UlaGeometry& geometry, double angle) {
  const int n = geometry.num_antennas();
  const double step = 2.0 * std::numbers::pi * geometry.spacing() * std::sin(angle);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  CVector a(n);
  for (int k = 0; k < n; ++k) {
    a(k) = std::polar(scale, step * k);
  }
  return a;
}

namespace {

std::vector<std::size_t> random_subset(RandomStream& rng, std::size_t pool_size,
                                       PathCountRange counts) {
  std::uniform_int_distribution<int> size_dist(counts.min, counts.max);
  const auto size = static_cast<std::size_t>(size_dist(rng));

  // partial Fisher-Yates
  std::vector<std::size_t> idx(pool_size);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  for (std::size_t i = 0; i < size; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, pool_size - 1);
    std::swap(idx[i], idx[pick(rng)]);
  }
  idx.resize(size);
  std::sort(idx.begin(), idx.end());
  return idx;
}

}  // namespace

ScattererPool draw_scatterer_pool(RandomStream& rng, int pool_size, PathCountRange path_counts) {
  if (path_counts.min < 1 || path_counts.max < path_counts.min) {
    throw Error(ErrorKind::InvalidRange,
                "path count range [" + std::to_string(path_counts.min) + ", " +
                    std::to_string(path_counts.max) + "] is empty or non-positive");
  }
  if (pool_size < path_counts.max) {
    throw Error(ErrorKind::InvalidRange, "pool of " + std::to_string(pool_size) +
                                             " scatterers cannot supply " +
                                             std::to_string(path_counts.max) + " paths");
  }

  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  ScattererPool pool;
  pool.scatterers.reserve(static_cast<std::size_t>(pool_size));
  for (int s = 0; s < pool_size; ++s) {
    Scatterer sc{};
    sc.aod_at_alice = angle(rng);
    sc.aoa_at_bob = angle(rng);
    sc.aoa_at_eve = angle(rng);
    pool.scatterers.push_back(sc);
  }
  pool.bob_paths = random_subset(rng, pool.scatterers.size(), path_counts);
  pool.eve_paths = random_subset(rng, pool.scatterers.size(), path_counts);
  return pool;
}

ChannelRealization assemble_channel(const UlaGeometry& tx, const UlaGeometry& rx,
                                    std::vector<double> aods, std::vector<double> aoas,
                                    CVector gains, double path_loss) {
  if (aods.size() != aoas.size() || static_cast<Index>(aods.size()) != gains.size()) {
    throw Error(ErrorKind::DimensionMismatch, "path parameter vectors differ in length");
  }
  if (aods.empty()) {
    throw Error(ErrorKind::EmptyPathSet, "channel needs at least one path");
  }
  if (!(path_loss > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "path loss must be positive");
  }

  const double scale =
      std::sqrt(static_cast<double>(tx.num_antennas()) * rx.num_antennas() / path_loss);
  CMatrix h = CMatrix::Zero(rx.num_antennas(), tx.num_antennas());
  for (std::size_t l = 0; l < aods.size(); ++l) {
    h.noalias() += (scale * gains(static_cast<Index>(l))) * array_response(rx, aoas[l]) *
                   array_response(tx, aods[l]).adjoint();
  }
  return ChannelRealization{std::move(h), std::move(gains), std::move(aods), std::move(aoas),
                            path_loss, tx, rx};
}

ChannelRealization realize_channel(const ScattererPool& pool, Receiver receiver,
                                   const UlaGeometry& tx, const UlaGeometry& rx,
                                   double path_loss, RandomStream& rng) {
  const auto& paths = pool.paths(receiver);
  if (paths.empty()) {
    throw Error(ErrorKind::EmptyPathSet, "receiver has no propagation paths");
  }

  std::normal_distribution<double> half_var(0.0, std::sqrt(0.5));
  std::vector<double> aods;
  std::vector<double> aoas;
  CVector gains(static_cast<Index>(paths.size()));
  for (std::size_t l = 0; l < paths.size(); ++l) {
    if (paths[l] >= pool.scatterers.size()) {
      throw Error(ErrorKind::InvalidRange, "path index outside scatterer pool");
    }
    const Scatterer& s = pool.scatterers[paths[l]];
    aods.push_back(s.aod_at_alice);
    aoas.push_back(receiver == Receiver::Bob ? s.aoa_at_bob : s.aoa_at_eve);
    const double re = half_var(rng);
    const double im = half_var(rng);
    gains(static_cast<Index>(l)) = Complex(re, im);
  }
  return assemble_channel(tx, rx, std::move(aods), std::move(aoas), std::move(gains), path_loss);
}

}  // namespace mmsec
