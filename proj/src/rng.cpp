#include "dendrolim/rng.hpp"

#include <algorithm>

namespace dendrolim {

Engine make_engine(std::uint64_t seed, std::uint64_t shard) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(shard), static_cast<std::uint32_t>(shard >> 32)};
  return Engine(seq);
}

std::int64_t shard_share(std::int64_t total, int shards, int shard) {
  std::int64_t base = total / shards;
  return base + (shard < total % shards ? 1 : 0);
}

WeightedPicker::WeightedPicker(std::span<const double> weights) {
  double running = 0.0;
  cumulative_.reserve(weights.size());
  for (double w : weights) {
    running += w;
    cumulative_.push_back(running);
  }
}

int WeightedPicker::operator()(Engine& engine) const {
  std::uniform_real_distribution<double> u(0.0, cumulative_.back());
  double x = u(engine);
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), x);
  if (it == cumulative_.end()) --it;
  return static_cast<int>(it - cumulative_.begin());
}

}  // namespace dendrolim
