#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <utility>

#include "mixdist/time_ticks.hpp"
#include "mixdist/tree.hpp"

namespace mixdist {

/// SplitMix64 (Steele, Lea, Flood 2014). Output, bounded draws and splitting
/// are fixed here so generated trees reproduce across platforms and builds.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, bound), bound > 0 (Lemire's multiply-shift with rejection).
  std::uint64_t below(std::uint64_t bound);

  /// Independent child stream seeded from this stream's next output.
  SplitMix64 split() { return SplitMix64(next()); }

 private:
  std::uint64_t state_;
};

enum class Shape { random, complete, caterpillar };

struct TimeModel {
  enum class Kind { unit_coalescent, uniform_jitter };
  Kind kind = Kind::unit_coalescent;
  std::uint64_t max_step = 0;  // uniform_jitter: each merge adds 1..max_step ticks

  static TimeModel unit() { return {}; }
  static TimeModel jitter(std::uint64_t max_step) { return {Kind::uniform_jitter, max_step}; }
};

struct GenSpec {
  std::uint64_t leaves = 1;
  std::uint64_t seed = 0;
  Shape shape = Shape::random;
  TimeModel time_model;
};

enum class PairMode { independent, same_topology_jittered_times, permuted_leaves };

inline constexpr std::uint64_t kDefaultPairJitter = kTicksPerUnit / 2;

Shape parse_shape(std::string_view name);
std::string_view to_string(Shape shape);
PairMode parse_pair_mode(std::string_view name);
std::string_view to_string(PairMode mode);

/// Leaves are labeled L1..Ln. Random shapes merge uniformly chosen pairs of
/// live subtrees; complete and caterpillar shapes are fixed topologies. Merge
/// times strictly increase in merge order. Throws Error(InvalidSpec).
MixtureTree random_mixture_tree(const GenSpec& spec);

/// Both trees share the labels L1..Ln. `jitter` bounds the per-step time
/// offset in same_topology_jittered_times mode; zero jitter copies the tree.
std::pair<MixtureTree, MixtureTree> random_comparable_pair(const GenSpec& spec, PairMode mode,
                                                           std::uint64_t jitter = kDefaultPairJitter);

/// The i-th leaf from the left takes the label of leaf `permutation[i]`.
MixtureTree permute_labels(const MixtureTree& tree, std::span<const std::size_t> permutation);

/// Redraws times of a strictly monotone tree: internal nodes in increasing
/// time order receive cumulative offsets, each step adding 0..max_step ticks.
MixtureTree jitter_times(const MixtureTree& tree, std::uint64_t max_step, SplitMix64& rng);

/// Multiplies every mutation time by `factor`. Throws Error(Overflow).
MixtureTree scale_times(const MixtureTree& tree, std::uint64_t factor);

}  // namespace mixdist
