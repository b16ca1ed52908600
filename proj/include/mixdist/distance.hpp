#pragma once

#include <cstdint>
#include <string_view>

#include "mixdist/lca_index.hpp"
#include "mixdist/time_ticks.hpp"
#include "mixdist/tree.hpp"

namespace mixdist {

/// Numbers of red and green leaves below a node during one coloring round.
/// Leaf counts fit 32 bits (trees are indexed by uint32 node ids).
struct ColorVector {
  std::uint32_t red = 0;
  std::uint32_t green = 0;

  ColorVector& operator+=(const ColorVector& other) {
    red += other.red;
    green += other.green;
    return *this;
  }
  friend ColorVector operator+(ColorVector a, const ColorVector& b) { return a += b; }
  friend bool operator==(const ColorVector&, const ColorVector&) = default;
};

/// (a, b) * (c, d) = ad + bc: red-green pairs split across two subtrees.
constexpr std::uint64_t pair_product(const ColorVector& a, const ColorVector& b) {
  return std::uint64_t{a.red} * b.green + std::uint64_t{a.green} * b.red;
}

/// Running mixture distance in ticks with overflow-checked 128-bit arithmetic.
class DistanceAccumulator {
 public:
  DistanceAccumulator() = default;
  explicit DistanceAccumulator(uint128 ticks) : total_(ticks) {}

  void add(uint128 amount) {
    if (__builtin_add_overflow(total_, amount, &total_)) throw_overflow();
  }
  void add_product(std::uint64_t time_diff, std::uint64_t count) {
    add(static_cast<uint128>(time_diff) * count);
  }
  DistanceAccumulator& operator+=(const DistanceAccumulator& other) {
    add(other.total_);
    return *this;
  }

  uint128 ticks() const { return total_; }
  /// Checked narrowing; throws Error(Overflow) when the total exceeds 64 bits.
  std::uint64_t to_u64() const;

  friend bool operator==(const DistanceAccumulator&, const DistanceAccumulator&) = default;

 private:
  [[noreturn]] static void throw_overflow();
  uint128 total_ = 0;
};

/// Rejects inputs whose worst case C(n,2) * max_ticks does not fit the accumulator.
void check_distance_bound(std::uint64_t leaf_count, std::uint64_t max_ticks);

/// Largest internal-node time in the tree (0 for a single leaf).
TimeTicks max_time(const MixtureTree& tree);

/// P_T(u, v): time of the LCA of two distinct leaves. Throws Error(SameLeaf).
TimeTicks lca_time(const MixtureTree& tree, const LcaIndex& index, NodeId u, NodeId v);

/// Definition-level oracle: every unordered leaf pair, LCAs by walking up.
DistanceAccumulator mixture_distance_bruteforce(const MixtureTree& t1, const MixtureTree& t2);

struct ColoringStats {
  uint128 pairs_counted = 0;  // sum of number(u) over the whole run
  // rounds v where sum of number(u) differed from #red * #green
  std::uint64_t rounds_mismatched = 0;
};

/// Red/green coloring over T1's internal nodes, bottom-up color sweep of T2
/// for each. O(n^2).
DistanceAccumulator mixture_distance_coloring(const MixtureTree& t1, const MixtureTree& t2,
                                              ColoringStats* stats = nullptr);

enum class Algorithm { naive, coloring, fast };

std::string_view to_string(Algorithm algo);
Algorithm parse_algorithm(std::string_view name);

DistanceAccumulator mixture_distance(const MixtureTree& t1, const MixtureTree& t2, Algorithm algo);

}  // namespace mixdist
