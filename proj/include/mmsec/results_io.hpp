#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "mmsec/harness.hpp"

namespace mmsec {

enum class OutputFormat { Csv, Json };

/// Header: trial_id,algorithm,x_kind,x_value,rate_bob,rate_eve,secrecy_rate,infeasible
/// Reals use the shortest representation that round-trips.
std::string format_csv(std::vector<SecrecyResult> results);
std::string format_json(std::vector<SecrecyResult> results);

std::vector<SecrecyResult> parse_csv(std::string_view text);

/// Sorts, renders and writes. An empty path writes to stdout. Throws
/// InvalidArgument on empty input and IoFailure when the file cannot be written.
void emit_results(const std::vector<SecrecyResult>& results, OutputFormat format,
                  const std::filesystem::path& destination);

}  // namespace mmsec
