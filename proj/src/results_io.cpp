#include "mmsec/results_io.hpp"

#include <charconv>
#include <fstream>
#include <iostream>

#include "json.hpp"
#include "mmsec/error.hpp"

namespace mmsec {

namespace {

constexpr std::string_view kHeader =
    "trial_id,algorithm,x_kind,x_value,rate_bob,rate_eve,secrecy_rate,infeasible";

std::string_view kind_tag(XKind k) { return k == XKind::SnrDb ? "snr_db" : "qos"; }

void append_real(std::string& out, double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  out.append(buf, res.ptr);
}

[[noreturn]] void parse_error(std::size_t line, const std::string& what) {
  throw Error(ErrorKind::InvalidArgument, "csv line " + std::to_string(line) + ": " + what);
}

template <typename T>
T field_number(std::string_view s, std::size_t line) {
  T v{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    parse_error(line, "bad number '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

std::string format_csv(std::vector<SecrecyResult> results) {
  sort_results(results);
  std::string out(kHeader);
  out += '\n';
  for (const auto& r : results) {
    out += std::to_string(r.trial_id);
    out += ',';
    out += to_string(r.algorithm);
    out += ',';
    out += kind_tag(r.x_kind);
    out += ',';
    append_real(out, r.x_value);
    out += ',';
    append_real(out, r.rate_bob);
    out += ',';
    append_real(out, r.rate_eve);
    out += ',';
    append_real(out, r.secrecy_rate);
    out += ',';
    out += r.infeasible ? '1' : '0';
    out += '\n';
  }
  return out;
}

std::string format_json(std::vector<SecrecyResult> results) {
  sort_results(results);
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : results) {
    nlohmann::ordered_json row;
    row["trial_id"] = r.trial_id;
    row["algorithm"] = to_string(r.algorithm);
    row["x_kind"] = kind_tag(r.x_kind);
    row["x_value"] = r.x_value;
    row["rate_bob"] = r.rate_bob;
    row["rate_eve"] = r.rate_eve;
    row["secrecy_rate"] = r.secrecy_rate;
    row["infeasible"] = r.infeasible ? 1 : 0;
    arr.push_back(std::move(row));
  }
  return arr.dump(2) + "\n";
}

std::vector<SecrecyResult> parse_csv(std::string_view text) {
  std::vector<SecrecyResult> out;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (!header_seen) {
      if (line != kHeader) parse_error(line_no, "unexpected header");
      header_seen = true;
      continue;
    }

    std::vector<std::string_view> f;
    for (;;) {
      const auto comma = line.find(',');
      f.push_back(line.substr(0, comma));
      if (comma == std::string_view::npos) break;
      line.remove_prefix(comma + 1);
    }
    if (f.size() != 8) parse_error(line_no, "expected 8 fields");

    SecrecyResult r;
    r.trial_id = field_number<std::uint64_t>(f[0], line_no);
    const auto alg = parse_algorithm(f[1]);
    if (!alg) parse_error(line_no, "unknown algorithm '" + std::string(f[1]) + "'");
    r.algorithm = *alg;
    if (f[2] == "snr_db") {
      r.x_kind = XKind::SnrDb;
    } else if (f[2] == "qos") {
      r.x_kind = XKind::Qos;
    } else {
      parse_error(line_no, "bad x_kind");
    }
    r.x_value = field_number<double>(f[3], line_no);
    r.rate_bob = field_number<double>(f[4], line_no);
    r.rate_eve = field_number<double>(f[5], line_no);
    r.secrecy_rate = field_number<double>(f[6], line_no);
    if (f[7] != "0" && f[7] != "1") parse_error(line_no, "infeasible must be 0 or 1");
    r.infeasible = f[7] == "1";
    out.push_back(r);
  }
  if (!header_seen) parse_error(line_no, "missing header");
  return out;
}

void emit_results(const std::vector<SecrecyResult>& results, OutputFormat format,
                  const std::filesystem::path& destination) {
  if (results.empty()) {
    throw Error(ErrorKind::InvalidArgument, "no results to emit");
  }
  const std::string text = format == OutputFormat::Csv ? format_csv(results) : format_json(results);
  if (destination.empty()) {
    std::cout << text << std::flush;
    return;
  }
  std::ofstream out(destination, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error(ErrorKind::IoFailure, "cannot open " + destination.string() + " for writing");
  }
  out << text;
  out.flush();
  if (!out) {
    throw Error(ErrorKind::IoFailure, "write to " + destination.string() + " failed");
  }
}

}  // namespace mmsec
