#include "mmsec/config.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <utility>

#include "mmsec/error.hpp"

namespace mmsec {

namespace {

constexpr std::array<std::pair<Algorithm, std::string_view>, 5> kAlgorithmTags{{
    {Algorithm::KnownCsi, "known-csi"},
    {Algorithm::UnknownCsiAn, "unknown-csi-an"},
    {Algorithm::HybridNoPls, "hybrid-no-pls"},
    {Algorithm::FullDigitalGed, "full-digital-ged"},
    {Algorithm::FullDigitalNoPls, "full-digital-no-pls"},
}};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_list(std::string_view s) {
  std::vector<std::string_view> out;
  while (true) {
    const auto comma = s.find(',');
    const auto item = trim(s.substr(0, comma));
    if (!item.empty()) out.push_back(item);
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return out;
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value, std::string_view want) {
  throw Error(ErrorKind::ConfigInvalid, std::string(key) + ": cannot parse '" +
                                            std::string(value) + "' as " + std::string(want));
}

template <typename T>
T parse_number(std::string_view key, std::string_view value) {
  value = trim(value);
  T out{};
  const char* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc{} || ptr != end) {
    bad_value(key, value, std::is_floating_point_v<T> ? "a real number" : "an integer");
  }
  return out;
}

std::vector<double> parse_reals(std::string_view key, std::string_view value) {
  std::vector<double> out;
  for (auto item : split_list(value)) out.push_back(parse_number<double>(key, item));
  return out;
}

std::string join_reals(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v[i]);
    out.append(buf, res.ptr);
  }
  return out;
}

bool contains(const std::vector<Algorithm>& set, Algorithm a) {
  return std::find(set.begin(), set.end(), a) != set.end();
}

}  // namespace

std::string_view to_string(Algorithm algorithm) noexcept {
  for (const auto& [a, tag] : kAlgorithmTags) {
    if (a == algorithm) return tag;
  }
  return "unknown";
}

std::optional<Algorithm> parse_algorithm(std::string_view tag) noexcept {
  for (const auto& [a, t] : kAlgorithmTags) {
    if (t == tag) return a;
  }
  return std::nullopt;
}

ExperimentConfig ExperimentConfig::full_scale() {
  ExperimentConfig c;
  c.antennas_alice = c.antennas_bob = c.antennas_eve = 192;
  c.codebook_bits = 7;
  c.snr_grid_db = {-20.0, -15.0, -10.0, -5.0, 0.0, 5.0, 10.0};
  return c;
}

std::vector<std::string> validate(const ExperimentConfig& c, SweepKind kind) {
  std::vector<std::string> errs;
  auto need = [&errs](bool ok, std::string msg) {
    if (!ok) errs.push_back(std::move(msg));
  };

  need(c.antennas_alice >= 1, "antennas_alice: must be >= 1");
  need(c.antennas_bob >= 1, "antennas_bob: must be >= 1");
  need(c.antennas_eve >= 1, "antennas_eve: must be >= 1");
  need(std::isfinite(c.element_spacing) && c.element_spacing > 0.0,
       "element_spacing: must be > 0");
  need(c.rf_chains >= 1, "rf_chains: must be >= 1");
  need(c.streams >= 1, "streams: must be >= 1");
  need(c.streams <= c.rf_chains, "streams: must not exceed rf_chains");
  need(c.rf_chains <= std::min(c.antennas_alice, c.antennas_bob),
       "rf_chains: must not exceed min(antennas_alice, antennas_bob)");
  need(c.codebook_bits >= 1 && c.codebook_bits <= 16, "codebook_bits: must be in 1..16");
  if (c.codebook_bits >= 1 && c.codebook_bits <= 16) {
    need(c.rf_chains <= (1 << c.codebook_bits), "rf_chains: exceeds codebook size");
  }
  need(c.path_count_min >= 1, "path_count_min: must be >= 1");
  need(c.path_count_max >= c.path_count_min, "path_count_max: must be >= path_count_min");
  need(c.pool_size >= c.path_count_max, "pool_size: must be >= path_count_max");
  need(std::isfinite(c.path_loss_bob) && c.path_loss_bob > 0.0, "path_loss_bob: must be > 0");
  need(std::isfinite(c.path_loss_eve) && c.path_loss_eve > 0.0, "path_loss_eve: must be > 0");
  need(c.num_trials >= 1, "num_trials: must be >= 1");
  need(!c.algorithms.empty(), "algorithms: must name at least one algorithm");
  for (std::size_t i = 0; i < c.algorithms.size(); ++i) {
    for (std::size_t j = i + 1; j < c.algorithms.size(); ++j) {
      need(c.algorithms[i] != c.algorithms[j],
           "algorithms: duplicate entry " + std::string(to_string(c.algorithms[i])));
    }
  }
  const bool an = contains(c.algorithms, Algorithm::UnknownCsiAn);
  if (an) {
    need(c.streams < c.rf_chains, "streams: unknown-csi-an requires streams < rf_chains");
  }

  if (kind == SweepKind::Snr) {
    need(!c.snr_grid_db.empty(), "snr_grid_db: must not be empty");
    for (double v : c.snr_grid_db) need(std::isfinite(v), "snr_grid_db: values must be finite");
    if (an) {
      need(std::isfinite(c.an_qos) && c.an_qos >= 0.0, "an_qos: must be >= 0");
    }
  } else {
    need(an, "algorithms: qos sweep requires unknown-csi-an");
    need(!c.qos_grid.empty(), "qos_grid: must not be empty");
    for (double v : c.qos_grid) {
      need(std::isfinite(v) && v >= 0.0, "qos_grid: values must be finite and >= 0");
    }
    need(std::isfinite(c.qos_snr_db), "qos_snr_db: must be finite");
  }
  return errs;
}

void apply_setting(ExperimentConfig& c, std::string_view key, std::string_view value) {
  key = trim(key);
  value = trim(value);
  if (key == "antennas_alice") c.antennas_alice = parse_number<int>(key, value);
  else if (key == "antennas_bob") c.antennas_bob = parse_number<int>(key, value);
  else if (key == "antennas_eve") c.antennas_eve = parse_number<int>(key, value);
  else if (key == "element_spacing") c.element_spacing = parse_number<double>(key, value);
  else if (key == "rf_chains") c.rf_chains = parse_number<int>(key, value);
  else if (key == "streams") c.streams = parse_number<int>(key, value);
  else if (key == "codebook_bits") c.codebook_bits = parse_number<int>(key, value);
  else if (key == "pool_size") c.pool_size = parse_number<int>(key, value);
  else if (key == "path_count_min") c.path_count_min = parse_number<int>(key, value);
  else if (key == "path_count_max") c.path_count_max = parse_number<int>(key, value);
  else if (key == "path_loss_bob") c.path_loss_bob = parse_number<double>(key, value);
  else if (key == "path_loss_eve") c.path_loss_eve = parse_number<double>(key, value);
  else if (key == "snr_grid_db") c.snr_grid_db = parse_reals(key, value);
  else if (key == "qos_grid") c.qos_grid = parse_reals(key, value);
  else if (key == "qos_snr_db") c.qos_snr_db = parse_number<double>(key, value);
  else if (key == "an_qos") c.an_qos = parse_number<double>(key, value);
  else if (key == "num_trials") c.num_trials = parse_number<int>(key, value);
  else if (key == "seed") c.seed = parse_number<std::uint64_t>(key, value);
  else if (key == "algorithms") {
    std::vector<Algorithm> algs;
    for (auto tag : split_list(value)) {
      const auto a = parse_algorithm(tag);
      if (!a) bad_value(key, tag, "an algorithm tag");
      algs.push_back(*a);
    }
    c.algorithms = std::move(algs);
  } else {
    throw Error(ErrorKind::ConfigInvalid, "unknown config key '" + std::string(key) + "'");
  }
}

ExperimentConfig parse_config(std::string_view text) {
  ExperimentConfig c;
  int line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorKind::ConfigInvalid,
                  "line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    try {
      apply_setting(c, line.substr(0, eq), line.substr(eq + 1));
    } catch (const Error& e) {
      throw Error(ErrorKind::ConfigInvalid, "line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorKind::IoFailure, "cannot open config file " + path.string());
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string format_config(const ExperimentConfig& c) {
  std::ostringstream os;
  os << "antennas_alice = " << c.antennas_alice << '\n'
     << "antennas_bob = " << c.antennas_bob << '\n'
     << "antennas_eve = " << c.antennas_eve << '\n'
     << "element_spacing = " << join_reals({c.element_spacing}) << '\n'
     << "rf_chains = " << c.rf_chains << '\n'
     << "streams = " << c.streams << '\n'
     << "codebook_bits = " << c.codebook_bits << '\n'
     << "pool_size = " << c.pool_size << '\n'
     << "path_count_min = " << c.path_count_min << '\n'
     << "path_count_max = " << c.path_count_max << '\n'
     << "path_loss_bob = " << join_reals({c.path_loss_bob}) << '\n'
     << "path_loss_eve = " << join_reals({c.path_loss_eve}) << '\n'
     << "snr_grid_db = " << join_reals(c.snr_grid_db) << '\n'
     << "qos_grid = " << join_reals(c.qos_grid) << '\n'
     << "qos_snr_db = " << join_reals({c.qos_snr_db}) << '\n'
     << "an_qos = " << join_reals({c.an_qos}) << '\n'
     << "num_trials = " << c.num_trials << '\n'
     << "seed = " << c.seed << '\n'
     << "algorithms = ";
  for (std::size_t i = 0; i < c.algorithms.size(); ++i) {
    os << (i ? ", " : "") << to_string(c.algorithms[i]);
  }
  os << '\n';
  return os.str();
}

}  // namespace mmsec
