#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mixdist/distance.hpp"
#include "mixdist/lca_index.hpp"
#include "mixdist/tree.hpp"

namespace mixdist {

enum class LeafColor : std::uint8_t { red, green };

struct RankedLeaf {
  std::uint32_t rank;  // position of the leaf in T2's left-to-right order, 1-based
  NodeId leaf;         // the leaf in T2
  LeafColor color;
};

/// Sorted strictly by rank.
using RankedLeafList = std::vector<RankedLeaf>;

struct LeafRanking {
  std::vector<std::uint32_t> t1;  // indexed by T1 node; rank inherited from the image leaf
  std::vector<std::uint32_t> t2;  // indexed by T2 node; postorder leaf rank
};

LeafRanking rank_leaves(const MixtureTree& t1, const MixtureTree& t2, const LeafBijection& bij);

/// Two-way merge by rank. Entries from `left` become red and entries from
/// `right` green, whatever color they carried before.
RankedLeafList merge_leaf_lists(std::span<const RankedLeaf> left, std::span<const RankedLeaf> right);

inline constexpr std::uint32_t kNoVirtualNode = UINT32_MAX;

struct VirtualNode {
  NodeId origin;  // node of T2 this virtual node stands for
  TimeTicks time;
  std::uint32_t level;  // level of origin in T2
  std::uint32_t left = kNoVirtualNode;
  std::uint32_t right = kNoVirtualNode;
  ColorVector color;

  bool is_leaf() const { return left == kNoVirtualNode; }
};

/// Compressed subtree of T2 spanning a set of leaves: its internal nodes are
/// the LCAs of rank-consecutive leaves and every virtual edge stands for an
/// ancestor path in T2.
struct VirtualSubtree {
  std::vector<VirtualNode> nodes;
  std::vector<std::uint32_t> postorder;  // children before parents; root last
  std::uint32_t root = kNoVirtualNode;

  void clear() {
    nodes.clear();
    postorder.clear();
    root = kNoVirtualNode;
  }
};

/// Single left-to-right pass keeping the rightmost path on a stack ordered by
/// T2 level. `index` must be built from `t2` and ranks must be T2 leaf ranks.
/// Throws Error(DegenerateInput) for fewer than two leaves.
VirtualSubtree build_virtual_subtree(const MixtureTree& t2, const LcaIndex& index,
                                     std::span<const RankedLeaf> leaves);
/// As above, reusing the storage of `out`.
void build_virtual_subtree(const MixtureTree& t2, const LcaIndex& index, std::span<const RankedLeaf> leaves,
                           VirtualSubtree& out);

/// Bottom-up color sums over `vt`; adds |v_time - m(node)| * (red-green pairs
/// split at node) for every internal virtual node. Optionally reports the
/// number of pairs counted.
DistanceAccumulator partial_distance(TimeTicks v_time, VirtualSubtree& vt, uint128* pairs_counted = nullptr);

struct FastDistanceStats {
  uint128 pairs_counted = 0;
  // internal nodes v where the pairs counted differed from #red * #green
  std::uint64_t rounds_mismatched = 0;
  // sum over v of |leaf(v)|, bucketed by the level of v in the driving tree
  std::vector<std::uint64_t> leaf_entries_per_level;
  std::uint64_t peak_live_entries = 0;
  bool swapped = false;  // true when the second argument drove the outer loop
};

/// O(n h) mixture distance, h the smaller of the two heights. The shorter tree
/// drives the outer loop; ties keep the first argument.
DistanceAccumulator mixture_distance_fast(const MixtureTree& t1, const MixtureTree& t2,
                                          FastDistanceStats* stats = nullptr);

}  // namespace mixdist
