#include "mixdist/fast_distance.hpp"

#include <algorithm>
#include <cassert>
#include <utility>

#include "mixdist/error.hpp"

namespace mixdist {

LeafRanking rank_leaves(const MixtureTree& t1, const MixtureTree& t2, const LeafBijection& bij) {
  LeafRanking ranking;
  ranking.t2 = postorder_leaf_ranks(t2);
  ranking.t1.assign(t1.node_count(), 0);
  for (NodeId leaf : t1.leaves()) ranking.t1[to_index(leaf)] = ranking.t2[to_index(bij(leaf))];
  return ranking;
}

RankedLeafList merge_leaf_lists(std::span<const RankedLeaf> left, std::span<const RankedLeaf> right) {
  RankedLeafList out;
  out.reserve(left.size() + right.size());
  auto a = left.begin();
  auto b = right.begin();
  while (a != left.end() && b != right.end()) {
    if (a->rank < b->rank) {
      out.push_back({a->rank, a->leaf, LeafColor::red});
      ++a;
    } else {
      out.push_back({b->rank, b->leaf, LeafColor::green});
      ++b;
    }
  }
  for (; a != left.end(); ++a) out.push_back({a->rank, a->leaf, LeafColor::red});
  for (; b != right.end(); ++b) out.push_back({b->rank, b->leaf, LeafColor::green});
  return out;
}

void build_virtual_subtree([[maybe_unused]] const MixtureTree& t2, const LcaIndex& index,
                           std::span<const RankedLeaf> leaves, VirtualSubtree& out) {
  if (leaves.size() < 2) throw Error(ErrorCode::DegenerateInput, "a virtual subtree needs at least two leaves");
  out.clear();
  out.nodes.reserve(2 * leaves.size() - 1);
  out.postorder.reserve(2 * leaves.size() - 1);

  auto add_leaf = [&](const RankedLeaf& entry) {
    VirtualNode node{entry.leaf, TimeTicks{}, index.leaf_level(entry.rank), kNoVirtualNode, kNoVirtualNode, {}};
    node.color = entry.color == LeafColor::red ? ColorVector{1, 0} : ColorVector{0, 1};
    out.nodes.push_back(node);
    return static_cast<std::uint32_t>(out.nodes.size() - 1);
  };

  // Rightmost path of the tree built so far, root-most at the bottom. Each
  // internal entry already owns its left child; its right child is the entry
  // above it and is attached when the entry is popped.
  std::vector<std::uint32_t> path;
  path.reserve(leaves.size());
  auto pop = [&](std::uint32_t& chain) {
    const std::uint32_t top = path.back();
    path.pop_back();
    if (chain != kNoVirtualNode) out.nodes[top].right = chain;
    out.postorder.push_back(top);
    chain = top;
  };

  path.push_back(add_leaf(leaves[0]));
  for (std::size_t i = 1; i < leaves.size(); ++i) {
    assert(leaves[i - 1].rank < leaves[i].rank);
    assert(t2.leaves()[leaves[i].rank - 1] == leaves[i].leaf);
    const Joint& joint = index.query_leaf_ranks(leaves[i - 1].rank, leaves[i].rank);
    const std::uint32_t joint_level = joint.level;

    std::uint32_t chain = kNoVirtualNode;
    while (!path.empty() && out.nodes[path.back()].level > joint_level) pop(chain);
    // The previous leaf always sits strictly below the joint, so something
    // was popped. In a full binary tree the joint cannot already be on the
    // path: that would put two consecutive leaves under the same child.
    assert(chain != kNoVirtualNode);
    assert(path.empty() || out.nodes[path.back()].origin != joint.node);

    out.nodes.push_back({joint.node, joint.time, joint_level, chain, kNoVirtualNode, {}});
    path.push_back(static_cast<std::uint32_t>(out.nodes.size() - 1));
    path.push_back(add_leaf(leaves[i]));
  }

  std::uint32_t chain = kNoVirtualNode;
  while (!path.empty()) pop(chain);
  out.root = chain;
}

VirtualSubtree build_virtual_subtree(const MixtureTree& t2, const LcaIndex& index,
                                     std::span<const RankedLeaf> leaves) {
  VirtualSubtree vt;
  build_virtual_subtree(t2, index, leaves, vt);
  return vt;
}

DistanceAccumulator partial_distance(TimeTicks v_time, VirtualSubtree& vt, uint128* pairs_counted) {
  DistanceAccumulator total;
  uint128 pairs = 0;
  for (std::uint32_t vid : vt.postorder) {
    auto& node = vt.nodes[vid];
    if (node.is_leaf()) continue;
    const ColorVector& lc = vt.nodes[node.left].color;
    const ColorVector& rc = vt.nodes[node.right].color;
    const std::uint64_t number = pair_product(lc, rc);
    if (number != 0) {
      total.add_product(abs_diff(v_time, node.time), number);
      pairs += number;
    }
    node.color = lc + rc;
  }
  if (pairs_counted) *pairs_counted = pairs;
  return total;
}

namespace {

// T1's internal nodes in breadth-first order, flattened so the deepest-first
// sweep walks memory sequentially. A child is either another step (by slot)
// or a leaf carrying its ready-made list entry.
struct Step {
  static constexpr std::uint32_t kLeaf = UINT32_MAX;
  struct Child {
    std::uint32_t slot;
    RankedLeaf leaf;
  };
  Child left;
  Child right;
  TimeTicks time;
  std::uint32_t level;
};

std::vector<Step> schedule(const MixtureTree& t1, const LeafBijection& bij, const LeafRanking& ranking) {
  const auto order = level_order(t1, true);
  std::vector<std::uint32_t> slot(t1.node_count(), Step::kLeaf);
  for (std::size_t i = 0; i < order.size(); ++i) slot[to_index(order[i])] = static_cast<std::uint32_t>(i);

  auto child = [&](NodeId c) -> Step::Child {
    if (!t1.is_leaf(c)) return {slot[to_index(c)], {}};
    return {Step::kLeaf, {ranking.t1[to_index(c)], bij(c), LeafColor::red}};
  };
  std::vector<Step> steps;
  steps.reserve(order.size());
  for (NodeId v : order) steps.push_back({child(t1.left(v)), child(t1.right(v)), t1.time(v), t1.level(v)});
  return steps;
}

}  // namespace

DistanceAccumulator mixture_distance_fast(const MixtureTree& first, const MixtureTree& second,
                                          FastDistanceStats* stats) {
  const bool swapped = second.height() < first.height();
  const MixtureTree& t1 = swapped ? second : first;
  const MixtureTree& t2 = swapped ? first : second;

  const auto bij = check_comparable(t1, t2);
  check_distance_bound(t1.leaf_count(), std::max(max_time(t1), max_time(t2)).ticks);
  if (stats) {
    stats->swapped = swapped;
    stats->leaf_entries_per_level.assign(t1.height() + 1, 0);
  }

  // Stage 1: T2 leaves ranked left to right, T1 leaves inherit their image's rank.
  const LeafRanking ranking = rank_leaves(t1, t2, bij);
  const LcaIndex index(t2);
  const std::vector<Step> steps = schedule(t1, bij, ranking);

  // leaf(v) per step; a child's list is released once merged into its parent.
  std::vector<RankedLeafList> lists(steps.size());
  std::uint64_t live_entries = 0;
  auto take = [&](const Step::Child& c) -> RankedLeafList {
    if (c.slot == Step::kLeaf) return {c.leaf};
    live_entries -= lists[c.slot].size();
    return std::exchange(lists[c.slot], RankedLeafList{});
  };

  DistanceAccumulator total;
  VirtualSubtree vt;
  for (std::size_t s = steps.size(); s-- > 0;) {
    const Step& step = steps[s];
    const RankedLeafList left = take(step.left);
    const RankedLeafList right = take(step.right);
    RankedLeafList merged = merge_leaf_lists(left, right);

    // Stage 2: minimal subtree of T2 over leaf(v). Stage 3: red-green pairs split there.
    build_virtual_subtree(t2, index, merged, vt);
    uint128 pairs = 0;
    total += partial_distance(step.time, vt, &pairs);

    if (stats) {
      stats->pairs_counted += pairs;
      if (pairs != static_cast<uint128>(left.size()) * right.size()) ++stats->rounds_mismatched;
      stats->leaf_entries_per_level[step.level] += merged.size();
      stats->peak_live_entries = std::max(stats->peak_live_entries, live_entries + merged.size());
    }
    if (s != 0) {
      live_entries += merged.size();
      lists[s] = std::move(merged);
    }
  }
  return total;
}

}  // namespace mixdist
