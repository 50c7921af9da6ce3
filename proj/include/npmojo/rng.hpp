#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

namespace npmojo {

// Independent generator keyed by a master seed and a tuple of stream labels.
// Identical keys always give identical streams, independent of call order.
inline std::mt19937_64 keyed_stream(std::uint64_t master_seed, std::initializer_list<std::uint64_t> key) {
  std::vector<std::uint32_t> words;
  words.reserve(2 * (key.size() + 1));
  auto push = [&](std::uint64_t v) {
    words.push_back(static_cast<std::uint32_t>(v));
    words.push_back(static_cast<std::uint32_t>(v >> 32));
  };
  push(master_seed);
  for (auto k : key) push(k);
  std::seed_seq seq(words.begin(), words.end());
  return std::mt19937_64(seq);
}

// Stream labels so that different consumers of one master seed never collide.
enum class StreamTag : std::uint64_t { MedianTrick = 1, Bootstrap = 2, Simulation = 3 };

}  // namespace npmojo
