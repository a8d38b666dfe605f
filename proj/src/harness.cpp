#include "mmsec/harness.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>

#include "mmsec/an_design.hpp"
#include "mmsec/benchmarks.hpp"
#include "mmsec/error.hpp"
#include "mmsec/secure_design.hpp"

namespace mmsec {

namespace {

constexpr LinkNoise kUnitNoise{1.0};

void require_valid(const ExperimentConfig& config, SweepKind kind) {
  const auto errs = validate(config, kind);
  if (errs.empty()) return;
  std::string msg = "invalid experiment configuration:";
  for (const auto& e : errs) msg += "\n  " + e;
  throw Error(ErrorKind::ConfigInvalid, msg);
}

TransmitConfig transmit(const ExperimentConfig& c, double power) {
  return TransmitConfig{power, c.streams, c.rf_chains};
}

struct Rates {
  double bob;
  double eve;
  bool infeasible = false;
  double signal_power;
};

// Lazily builds the power-independent designs of one trial so every grid
// point reuses them.
class TrialEvaluator {
 public:
  TrialEvaluator(const ExperimentConfig& config, const CodebookPair& codebooks,
                 const TrialChannels& channels)
      : config_(config), codebooks_(codebooks), hb_(channels.bob.matrix), he_(channels.eve.matrix) {}

  Rates evaluate(Algorithm algorithm, double power, double qos) {
    const TransmitConfig tx = transmit(config_, power);
    switch (algorithm) {
      case Algorithm::KnownCsi:
        if (!known_) known_ = design_known_csi(hb_, he_, codebooks_, tx);
        return hybrid_rates(*known_, tx);
      case Algorithm::HybridNoPls:
        if (!no_pls_) no_pls_ = hybrid_no_pls(hb_, codebooks_, tx);
        return hybrid_rates(*no_pls_, tx);
      case Algorithm::FullDigitalNoPls:
        if (!digital_) digital_ = full_digital_no_pls(hb_, tx);
        return digital_rates(*digital_, tx);
      case Algorithm::FullDigitalGed:
        return digital_rates(full_digital_ged(hb_, he_, tx, kUnitNoise, kUnitNoise), tx);
      case Algorithm::UnknownCsiAn: {
        if (!no_pls_) no_pls_ = hybrid_no_pls(hb_, codebooks_, tx);
        const AnDesignResult an = design_unknown_csi(hb_, *no_pls_, tx, kUnitNoise, qos);
        return Rates{bob_rate_with_an(hb_, an, kUnitNoise, tx),
                     eve_rate_with_an(he_, an, kUnitNoise, tx), an.infeasible, an.signal_power};
      }
    }
    throw Error(ErrorKind::InvalidArgument, "unknown algorithm");
  }

 private:
  Rates hybrid_rates(const DesignResult& d, const TransmitConfig& tx) const {
    const CMatrix f = d.precoder.combined();
    return Rates{mutual_info_rate(hb_, f, d.combiner.combined(), kUnitNoise, tx),
                 eve_rate_upper_bound(he_, f, kUnitNoise, tx), false, tx.total_power};
  }

  Rates digital_rates(const FullDigitalDesign& d, const TransmitConfig& tx) const {
    return Rates{mutual_info_rate(hb_, d.precoder, d.combiner, kUnitNoise, tx),
                 eve_rate_upper_bound(he_, d.precoder, kUnitNoise, tx), false, tx.total_power};
  }

  const ExperimentConfig& config_;
  const CodebookPair& codebooks_;
  const CMatrix& hb_;
  const CMatrix& he_;
  std::optional<DesignResult> known_;
  std::optional<DesignResult> no_pls_;
  std::optional<FullDigitalDesign> digital_;
};

SecrecyResult make_row(std::uint64_t trial, Algorithm alg, XKind kind, double x, const Rates& r) {
  SecrecyResult row;
  row.trial_id = trial;
  row.algorithm = alg;
  row.x_kind = kind;
  row.x_value = x;
  row.rate_bob = r.bob;
  row.rate_eve = r.eve;
  row.secrecy_rate = secrecy_rate(r.bob, r.eve);
  row.infeasible = r.infeasible;
  row.signal_power = r.signal_power;
  return row;
}

template <typename TrialFn>
std::vector<SecrecyResult> run_trials(int num_trials, int threads, TrialFn&& trial_fn) {
  std::vector<std::vector<SecrecyResult>> per_trial(static_cast<std::size_t>(num_trials));
  unsigned workers = threads > 0 ? static_cast<unsigned>(threads)
                                 : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, static_cast<unsigned>(num_trials));

  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (int t = next++; t < num_trials; t = next++) {
      try {
        per_trial[static_cast<std::size_t>(t)] = trial_fn(static_cast<std::uint64_t>(t));
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = num_trials;
      }
    }
  };

  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned i = 0; i < workers; ++i) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<SecrecyResult> out;
  for (auto& rows : per_trial) {
    out.insert(out.end(), rows.begin(), rows.end());
  }
  sort_results(out);
  return out;
}

}  // namespace

TrialChannels draw_trial(const ExperimentConfig& c, std::uint64_t trial_id) {
  RandomStream rng = make_stream(c.seed, trial_id);
  const UlaGeometry alice(c.antennas_alice, c.element_spacing);
  const UlaGeometry bob(c.antennas_bob, c.element_spacing);
  const UlaGeometry eve(c.antennas_eve, c.element_spacing);
  ScattererPool pool =
      draw_scatterer_pool(rng, c.pool_size, PathCountRange{c.path_count_min, c.path_count_max});
  ChannelRealization hb = realize_channel(pool, Receiver::Bob, alice, bob, c.path_loss_bob, rng);
  ChannelRealization he = realize_channel(pool, Receiver::Eve, alice, eve, c.path_loss_eve, rng);
  return TrialChannels{std::move(pool), std::move(hb), std::move(he)};
}

CodebookPair make_codebooks(const ExperimentConfig& c) {
  return CodebookPair{build_codebook(UlaGeometry(c.antennas_alice, c.element_spacing), c.codebook_bits),
                      build_codebook(UlaGeometry(c.antennas_bob, c.element_spacing), c.codebook_bits)};
}

std::vector<SecrecyResult> run_snr_sweep(const ExperimentConfig& config, int threads) {
  require_valid(config, SweepKind::Snr);
  const CodebookPair codebooks = make_codebooks(config);
  return run_trials(config.num_trials, threads, [&](std::uint64_t trial) {
    const TrialChannels channels = draw_trial(config, trial);
    TrialEvaluator eval(config, codebooks, channels);
    std::vector<SecrecyResult> rows;
    for (Algorithm alg : config.algorithms) {
      for (double snr : config.snr_grid_db) {
        const Rates r = eval.evaluate(alg, db_to_linear(snr), config.an_qos);
        rows.push_back(make_row(trial, alg, XKind::SnrDb, snr, r));
      }
    }
    return rows;
  });
}

std::vector<SecrecyResult> run_qos_sweep(const ExperimentConfig& config, int threads) {
  require_valid(config, SweepKind::Qos);
  const CodebookPair codebooks = make_codebooks(config);
  const double power = db_to_linear(config.qos_snr_db);
  return run_trials(config.num_trials, threads, [&](std::uint64_t trial) {
    const TrialChannels channels = draw_trial(config, trial);
    TrialEvaluator eval(config, codebooks, channels);
    std::vector<SecrecyResult> rows;
    for (Algorithm alg : config.algorithms) {
      if (alg == Algorithm::UnknownCsiAn) {
        for (double qos : config.qos_grid) {
          rows.push_back(make_row(trial, alg, XKind::Qos, qos, eval.evaluate(alg, power, qos)));
        }
      } else {
        const Rates r = eval.evaluate(alg, power, 0.0);
        for (double qos : config.qos_grid) {
          rows.push_back(make_row(trial, alg, XKind::Qos, qos, r));
        }
      }
    }
    return rows;
  });
}

void sort_results(std::vector<SecrecyResult>& results) {
  std::stable_sort(results.begin(), results.end(),
                   [](const SecrecyResult& a, const SecrecyResult& b) {
                     const auto ta = to_string(a.algorithm);
                     const auto tb = to_string(b.algorithm);
                     if (ta != tb) return ta < tb;
                     if (a.x_value != b.x_value) return a.x_value < b.x_value;
                     return a.trial_id < b.trial_id;
                   });
}

}  // namespace mmsec
