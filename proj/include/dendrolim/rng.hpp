#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <thread>
#include <vector>

#include "dendrolim/sampling_measure.hpp"

namespace dendrolim {

using Engine = std::mt19937_64;

/// Stream for one shard of a sampling run. Shard streams depend only on
/// (seed, shard), so a run is reproducible given the seed and shard count.
Engine make_engine(std::uint64_t seed, std::uint64_t shard = 0);

/// Number of draws assigned to `shard` when `total` draws are split across
/// `shards` workers.
std::int64_t shard_share(std::int64_t total, int shards, int shard);

/// Draws an index with probability proportional to its weight. Const and
/// safe to share across threads.
class WeightedPicker {
 public:
  explicit WeightedPicker(std::span<const double> weights);
  int operator()(Engine& engine) const;
  std::size_t size() const noexcept { return cumulative_.size(); }

 private:
  std::vector<double> cumulative_;
};

/// Runs `draw(engine)` num_samples times, split across `shards` workers each
/// with its own stream, and returns the empirical measure of the returned
/// upper triangles. `draw` must be safe to call concurrently.
template <class Draw>
SamplingMeasure sample_empirical(int order, std::int64_t num_samples, std::uint64_t seed,
                                 int shards, Draw&& draw) {
  if (shards < 1) shards = 1;
  std::vector<MeasureBuilder> parts(static_cast<std::size_t>(shards), MeasureBuilder(order));
  auto run = [&](int shard) {
    Engine engine = make_engine(seed, static_cast<std::uint64_t>(shard));
    auto& builder = parts[static_cast<std::size_t>(shard)];
    for (std::int64_t k = shard_share(num_samples, shards, shard); k > 0; --k)
      builder.add_count(draw(engine), 1);
  };
  if (shards == 1) {
    run(0);
  } else {
    std::vector<std::thread> workers;
    workers.reserve(static_cast<std::size_t>(shards));
    for (int s = 0; s < shards; ++s) workers.emplace_back(run, s);
    for (auto& w : workers) w.join();
  }
  for (int s = 1; s < shards; ++s) parts[0].merge_counts(parts[static_cast<std::size_t>(s)]);
  return parts[0].finish_empirical();
}

}  // namespace dendrolim
