// Command-line front end for the Monte-Carlo secrecy experiments.
//
//   mmsec snr-sweep --config desk.cfg --out snr.csv
//   mmsec qos-sweep --config an.cfg --override rf_chains=16 --format json
//   mmsec validate-config --config desk.cfg --kind qos
//
// Exit codes: 0 success, 1 invalid configuration or usage, 2 I/O failure,
// 3 any other runtime failure.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mmsec/config.hpp"
#include "mmsec/error.hpp"
#include "mmsec/harness.hpp"
#include "mmsec/results_io.hpp"

namespace {

enum ExitCode : int { kOk = 0, kConfigInvalid = 1, kIoFailure = 2, kRuntimeFailure = 3 };

struct CommonOptions {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> trials;
  std::vector<std::string> overrides;
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("--config", opts.config_path, "Experiment config file (key = value lines)");
  cmd->add_option("--seed", opts.seed, "Master seed (overrides the config)");
  cmd->add_option("--trials", opts.trials, "Number of Monte-Carlo trials (overrides the config)");
  cmd->add_option("--override", opts.overrides, "key=value, applied after the config file")
      ->take_all();
}

mmsec::ExperimentConfig build_config(const CommonOptions& opts) {
  mmsec::ExperimentConfig cfg =
      opts.config_path.empty() ? mmsec::ExperimentConfig{} : mmsec::load_config(opts.config_path);
  for (const auto& kv : opts.overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) {
      throw mmsec::Error(mmsec::ErrorKind::ConfigInvalid,
                         "--override expects key=value, got '" + kv + "'");
    }
    mmsec::apply_setting(cfg, kv.substr(0, eq), kv.substr(eq + 1));
  }
  if (opts.seed) cfg.seed = *opts.seed;
  if (opts.trials) cfg.num_trials = *opts.trials;
  return cfg;
}

int exit_code_for(mmsec::ErrorKind kind) {
  switch (kind) {
    case mmsec::ErrorKind::ConfigInvalid:
    case mmsec::ErrorKind::InvalidRange:
      return kConfigInvalid;
    case mmsec::ErrorKind::IoFailure:
      return kIoFailure;
    default:
      return kRuntimeFailure;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Secure hybrid beamforming Monte-Carlo experiments"};
  app.require_subcommand(1);

  CommonOptions opts;
  std::string out_path;
  std::string format = "csv";
  int threads = 1;
  std::string kind = "snr";

  auto add_run_options = [&](CLI::App* cmd) {
    add_common(cmd, opts);
    cmd->add_option("--out", out_path, "Output file (stdout when omitted)");
    cmd->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--threads", threads, "Worker threads, 0 = auto")
        ->check(CLI::NonNegativeNumber);
  };

  CLI::App* snr = app.add_subcommand("snr-sweep", "Secrecy rate versus SNR");
  add_run_options(snr);
  CLI::App* qos = app.add_subcommand("qos-sweep", "Rates versus the QoS target of the AN design");
  add_run_options(qos);
  CLI::App* check = app.add_subcommand("validate-config", "Check a config and print it resolved");
  add_common(check, opts);
  check->add_option("--kind", kind, "Sweep the config is meant for")
      ->check(CLI::IsMember({"snr", "qos"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfigInvalid;
  }

  try {
    const mmsec::ExperimentConfig cfg = build_config(opts);

    if (check->parsed()) {
      const auto sweep = kind == "qos" ? mmsec::SweepKind::Qos : mmsec::SweepKind::Snr;
      const auto errs = mmsec::validate(cfg, sweep);
      if (!errs.empty()) {
        for (const auto& e : errs) std::cerr << "config-invalid: " << e << '\n';
        return kConfigInvalid;
      }
      std::cout << mmsec::format_config(cfg);
      return kOk;
    }

    const auto results = snr->parsed() ? mmsec::run_snr_sweep(cfg, threads)
                                       : mmsec::run_qos_sweep(cfg, threads);
    mmsec::emit_results(results,
                        format == "json" ? mmsec::OutputFormat::Json : mmsec::OutputFormat::Csv,
                        out_path);
    return kOk;
  } catch (const mmsec::Error& e) {
    std::cerr << mmsec::to_string(e.kind()) << ": " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRuntimeFailure;
  }
}
