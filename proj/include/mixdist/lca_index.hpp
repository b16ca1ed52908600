#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "mixdist/time_ticks.hpp"
#include "mixdist/tree.hpp"

namespace mixdist {

/// Range-minimum over a fixed array of keys. The array is cut into blocks of
/// kBlock entries; a sparse table over block minima covers the middle of a
/// query and the partial blocks at either end are scanned. O(1) per query,
/// O(N + (N / kBlock) log N) to build. Ties go to the smaller position.
class BlockRmq {
 public:
  static constexpr std::uint32_t kBlock = 16;

  BlockRmq() = default;
  explicit BlockRmq(std::vector<std::uint32_t> keys);

  /// Position of the smallest key in [lo, hi], lo <= hi.
  std::uint32_t argmin(std::uint32_t lo, std::uint32_t hi) const {
    const std::uint32_t block_lo = lo / kBlock;
    const std::uint32_t block_hi = hi / kBlock;
    if (block_lo == block_hi) return scan(lo, hi);

    std::uint32_t best = scan(lo, block_lo * kBlock + kBlock - 1);
    if (block_hi > block_lo + 1) {
      const std::uint32_t first = block_lo + 1;
      const std::uint32_t last = block_hi - 1;
      const unsigned k = floor_log2(last - first + 1);
      const std::uint32_t* row = table_.data() + row_offset_[k];
      best = pick(best, pick(row[first], row[last + 1 - (1u << k)]));
    }
    return pick(best, scan(block_hi * kBlock, hi));
  }

  std::uint32_t key(std::uint32_t position) const { return keys_[position]; }
  std::size_t size() const { return keys_.size(); }

 private:
  static unsigned floor_log2(std::uint32_t x) { return 31u - static_cast<unsigned>(__builtin_clz(x)); }

  std::uint32_t scan(std::uint32_t lo, std::uint32_t hi) const {
    std::uint32_t best = lo;
    for (std::uint32_t i = lo + 1; i <= hi; ++i) {
      if (keys_[i] < keys_[best]) best = i;
    }
    return best;
  }
  std::uint32_t pick(std::uint32_t a, std::uint32_t b) const { return keys_[b] < keys_[a] ? b : a; }

  std::vector<std::uint32_t> keys_;
  std::vector<std::uint32_t> table_;  // row k, entry i: argmin over blocks [i, i + 2^k)
  std::vector<std::size_t> row_offset_;
};

/// An LCA together with the attributes the distance engines read from it.
struct Joint {
  NodeId node;
  std::uint32_t level;
  TimeTicks time;
};

/// Constant-time LCA queries.
///
/// General queries use the Euler tour: the LCA of u and v is the shallowest
/// tour entry between their first occurrences. Leaf queries by rank use the
/// n-1 LCAs of neighbouring leaves: for ranks i < j the LCA is the shallowest
/// of the gaps i..j-1. Rank-indexed arrays keep those queries cache-local.
class LcaIndex {
 public:
  explicit LcaIndex(const MixtureTree& tree);

  NodeId query(NodeId u, NodeId v) const {
    std::uint32_t a = first_[to_index(u)];
    std::uint32_t b = first_[to_index(v)];
    if (a > b) std::swap(a, b);
    return tour_[tour_rmq_.argmin(a, b)];
  }

  /// LCA of the leaves with 1-based left-to-right ranks `lo` < `hi`.
  const Joint& query_leaf_ranks(std::uint32_t lo, std::uint32_t hi) const {
    return gaps_[gap_rmq_.argmin(lo - 1, hi - 2)];
  }
  /// Level of the leaf with 1-based rank `rank`.
  std::uint32_t leaf_level(std::uint32_t rank) const { return leaf_level_[rank - 1]; }

  std::span<const NodeId> euler_tour() const { return tour_; }
  std::uint32_t first_occurrence(NodeId id) const { return first_[to_index(id)]; }
  std::uint32_t depth_at(std::uint32_t position) const { return tour_rmq_.key(position); }

 private:
  std::vector<NodeId> tour_;
  std::vector<std::uint32_t> first_;
  BlockRmq tour_rmq_;

  std::vector<Joint> gaps_;  // gaps_[r]: LCA of leaves with ranks r+1 and r+2
  std::vector<std::uint32_t> leaf_level_;
  BlockRmq gap_rmq_;
};

inline LcaIndex build_index(const MixtureTree& tree) { return LcaIndex(tree); }

}  // namespace mixdist
