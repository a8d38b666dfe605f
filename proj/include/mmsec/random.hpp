#pragma once

#include <cstdint>
#include <random>

namespace mmsec {

using RandomStream = std::mt19937_64;

/// Independent stream keyed by (seed, stream_id). The key is mixed through
/// splitmix64 so neighbouring ids give unrelated engine states, which lets
/// trials be generated in any order or on any thread.
RandomStream make_stream(std::uint64_t seed, std::uint64_t stream_id);

}  // namespace mmsec
