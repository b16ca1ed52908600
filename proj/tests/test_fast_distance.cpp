#include <gtest/gtest.h>

#include <algorithm>

#include "mixdist/fast_distance.hpp"
#include "test_support.hpp"

using namespace mixdist;
using mixdist::testing::tree;

namespace {

RankedLeafList ranked(const MixtureTree& t2, const std::vector<std::string>& labels, LeafColor color = LeafColor::red) {
  const auto ranks = postorder_leaf_ranks(t2);
  RankedLeafList out;
  for (const auto& label : labels) {
    const NodeId leaf = *t2.find_leaf(label);
    out.push_back({ranks[to_index(leaf)], leaf, color});
  }
  std::sort(out.begin(), out.end(), [](const RankedLeaf& a, const RankedLeaf& b) { return a.rank < b.rank; });
  return out;
}

// Virtual subtree flattened to origin -> (parent origin, ticks) for oracle comparison.
std::map<std::uint32_t, mixdist::testing::ContractedNode> flatten(const VirtualSubtree& vt) {
  std::map<std::uint32_t, mixdist::testing::ContractedNode> out;
  out[to_index(vt.nodes[vt.root].origin)] = {std::nullopt, vt.nodes[vt.root].time.ticks};
  for (const auto& node : vt.nodes) {
    if (node.is_leaf()) continue;
    for (std::uint32_t child : {node.left, node.right}) {
      out[to_index(vt.nodes[child].origin)] = {to_index(node.origin), vt.nodes[child].time.ticks};
    }
  }
  return out;
}

std::set<std::string> leaf_labels_below(const MixtureTree& t2, const VirtualSubtree& vt, std::uint32_t v) {
  if (vt.nodes[v].is_leaf()) return {t2.label(vt.nodes[v].origin)};
  auto left = leaf_labels_below(t2, vt, vt.nodes[v].left);
  const auto right = leaf_labels_below(t2, vt, vt.nodes[v].right);
  left.insert(right.begin(), right.end());
  return left;
}

}  // namespace

TEST(RankLeaves, ImportsRanksFromSecondTree) {
  const auto a = tree("((C,B)1,A)2;");
  const auto b = tree("((A,B)1,C)2;");
  const auto ranking = rank_leaves(a, b, check_comparable(a, b));
  EXPECT_EQ(ranking.t2[to_index(*b.find_leaf("A"))], 1u);
  EXPECT_EQ(ranking.t2[to_index(*b.find_leaf("B"))], 2u);
  EXPECT_EQ(ranking.t2[to_index(*b.find_leaf("C"))], 3u);
  std::vector<std::uint32_t> in_t1_order;
  for (NodeId leaf : a.leaves()) in_t1_order.push_back(ranking.t1[to_index(leaf)]);
  EXPECT_EQ(in_t1_order, (std::vector<std::uint32_t>{3, 2, 1}));
}

TEST(RankLeaves, IdenticalTreesAgree) {
  const auto a = tree("(((A,B)1,C)2,(D,E)1.5)3;");
  const auto ranking = rank_leaves(a, a, check_comparable(a, a));
  for (NodeId leaf : a.leaves()) EXPECT_EQ(ranking.t1[to_index(leaf)], ranking.t2[to_index(leaf)]);
}

TEST(MergeLeafLists, RecolorsBySide) {
  const NodeId x = node_id(0);
  const RankedLeafList left{{1, x, LeafColor::green}, {3, x, LeafColor::green}};
  const RankedLeafList right{{2, x, LeafColor::red}};
  const auto merged = merge_leaf_lists(left, right);
  ASSERT_EQ(merged.size(), 3u);
  EXPECT_EQ(merged[0].rank, 1u);
  EXPECT_EQ(merged[0].color, LeafColor::red);
  EXPECT_EQ(merged[1].rank, 2u);
  EXPECT_EQ(merged[1].color, LeafColor::green);
  EXPECT_EQ(merged[2].rank, 3u);
  EXPECT_EQ(merged[2].color, LeafColor::red);
  EXPECT_EQ(merge_leaf_lists(RankedLeafList{{5, x, LeafColor::red}}, RankedLeafList{{4, x, LeafColor::red}}).size(), 2u);
}

TEST(VirtualSubtree, TwoLeaves) {
  const auto t2 = tree("(((A,B)1,C)2,(D,E)1.5)3;");
  const auto index = build_index(t2);
  const auto vt = build_virtual_subtree(t2, index, ranked(t2, {"B", "D"}));
  EXPECT_EQ(vt.nodes.size(), 3u);
  EXPECT_EQ(vt.nodes[vt.root].origin, t2.root());
  EXPECT_EQ(vt.postorder.back(), vt.root);
}

TEST(VirtualSubtree, AllLeavesIsWholeTree) {
  const auto t2 = random_mixture_tree(mixdist::testing::spec(40, 8));
  const auto index = build_index(t2);
  std::vector<std::string> labels;
  for (NodeId leaf : t2.leaves()) labels.push_back(t2.label(leaf));
  const auto vt = build_virtual_subtree(t2, index, ranked(t2, labels));
  EXPECT_EQ(vt.nodes.size(), t2.node_count());
  for (const auto& node : vt.nodes) {
    if (node.is_leaf()) continue;
    EXPECT_EQ(vt.nodes[node.left].origin, t2.left(node.origin));
    EXPECT_EQ(vt.nodes[node.right].origin, t2.right(node.origin));
  }
}

TEST(VirtualSubtree, FewerThanTwoLeavesIsDegenerate) {
  const auto t2 = tree("((A,B)1,C)2;");
  const auto index = build_index(t2);
  try {
    build_virtual_subtree(t2, index, ranked(t2, {"A"}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DegenerateInput);
  }
}

// Leaves A..H with lca(B,G) at the root and lca(G,H) younger than it: the
// insertion of G hangs off lca(B,G), then H moves G under lca(G,H).
TEST(VirtualSubtree, ReattachmentWalkthrough) {
  const auto t2 = tree("(((A,B)1,(C,D)2)3,((E,F)4,(G,H)5)6)7;");
  const auto index = build_index(t2);
  const auto lca = [&](const char* x, const char* y) { return lca_naive(t2, *t2.find_leaf(x), *t2.find_leaf(y)); };

  const auto ab = build_virtual_subtree(t2, index, ranked(t2, {"A", "B"}));
  ASSERT_EQ(ab.nodes.size(), 3u);
  EXPECT_EQ(ab.nodes[ab.root].origin, lca("A", "B"));

  const auto abg = build_virtual_subtree(t2, index, ranked(t2, {"A", "B", "G"}));
  ASSERT_EQ(abg.nodes.size(), 5u);
  const auto& root3 = abg.nodes[abg.root];
  EXPECT_EQ(root3.origin, lca("B", "G"));
  EXPECT_EQ(abg.nodes[root3.left].origin, lca("A", "B"));
  EXPECT_EQ(abg.nodes[root3.right].origin, *t2.find_leaf("G"));

  const auto abgh = build_virtual_subtree(t2, index, ranked(t2, {"A", "B", "G", "H"}));
  ASSERT_EQ(abgh.nodes.size(), 7u);
  const auto& root4 = abgh.nodes[abgh.root];
  EXPECT_EQ(root4.origin, lca("B", "G"));
  EXPECT_GT(root4.time, t2.time(lca("G", "H")));
  EXPECT_EQ(abgh.nodes[root4.left].origin, lca("A", "B"));
  const auto& gh = abgh.nodes[root4.right];
  EXPECT_EQ(gh.origin, lca("G", "H"));
  EXPECT_EQ(abgh.nodes[gh.left].origin, *t2.find_leaf("G"));
  EXPECT_EQ(abgh.nodes[gh.right].origin, *t2.find_leaf("H"));

  std::set<std::uint32_t> internal;
  for (const auto& node : abgh.nodes) {
    if (!node.is_leaf()) internal.insert(to_index(node.origin));
  }
  EXPECT_EQ(internal, (std::set<std::uint32_t>{to_index(lca("A", "B")), to_index(lca("B", "G")), to_index(lca("G", "H"))}));
}

TEST(VirtualSubtree, MatchesMinimalSubtreeOracle) {
  SplitMix64 rng(99);
  for (std::uint64_t seed = 0; seed < 80; ++seed) {
    const Shape shape = seed % 4 == 3 ? Shape::caterpillar : Shape::random;
    const auto t2 = random_mixture_tree(mixdist::testing::spec(2 + seed % 40, seed, shape));
    const auto index = build_index(t2);
    std::vector<std::string> labels;
    for (NodeId leaf : t2.leaves()) labels.push_back(t2.label(leaf));
    for (std::size_t i = labels.size(); i > 1; --i) std::swap(labels[i - 1], labels[rng.below(i)]);
    labels.resize(2 + rng.below(labels.size() - 1));
    const auto list = ranked(t2, labels);
    std::vector<NodeId> leaves;
    for (const auto& e : list) leaves.push_back(e.leaf);

    const auto vt = build_virtual_subtree(t2, index, list);
    EXPECT_EQ(flatten(vt), mixdist::testing::minimal_subtree_oracle(t2, leaves));
    for (const auto& node : vt.nodes) {
      if (!node.is_leaf()) {
        EXPECT_NE(node.right, kNoVirtualNode);
      }
      EXPECT_EQ(node.level, t2.level(node.origin));
    }
    // Postorder visits children before parents.
    std::vector<int> pos(vt.nodes.size(), -1);
    for (std::size_t i = 0; i < vt.postorder.size(); ++i) pos[vt.postorder[i]] = static_cast<int>(i);
    for (const auto& node : vt.nodes) {
      if (node.is_leaf()) continue;
      const auto self = static_cast<std::uint32_t>(&node - vt.nodes.data());
      EXPECT_LT(pos[node.left], pos[self]);
      EXPECT_LT(pos[node.right], pos[self]);
    }
  }
}

TEST(PartialDistance, Examples) {
  const auto t2 = tree("(((A,B)1,C)2,(D,E)1.5)3;");
  const auto index = build_index(t2);

  auto all_red = build_virtual_subtree(t2, index, ranked(t2, {"A", "C", "E"}, LeafColor::red));
  EXPECT_EQ(partial_distance(TimeTicks::from_units(10), all_red).ticks(), 0u);

  auto list = ranked(t2, {"A", "E"});
  list[1].color = LeafColor::green;
  auto two = build_virtual_subtree(t2, index, list);
  uint128 pairs = 0;
  EXPECT_EQ(partial_distance(TimeTicks::from_units(10), two, &pairs).ticks(), 7'000'000u);
  EXPECT_EQ(pairs, 1u);
}

TEST(PartialDistance, CountsEveryRedGreenPairAtItsLca) {
  SplitMix64 rng(5);
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const auto t2 = random_mixture_tree(mixdist::testing::spec(2 + seed % 50, seed));
    const auto index = build_index(t2);
    std::vector<std::string> labels;
    for (NodeId leaf : t2.leaves()) {
      if (rng.below(3) != 0) labels.push_back(t2.label(leaf));
    }
    if (labels.size() < 2) continue;
    auto list = ranked(t2, labels);
    for (auto& e : list) e.color = rng.below(2) ? LeafColor::red : LeafColor::green;

    const TimeTicks v_time{rng.below(50'000'000)};
    uint128 expected = 0;
    uint128 reds = 0;
    uint128 greens = 0;
    for (std::size_t i = 0; i < list.size(); ++i) {
      (list[i].color == LeafColor::red ? reds : greens) += 1;
      for (std::size_t j = i + 1; j < list.size(); ++j) {
        if (list[i].color == list[j].color) continue;
        expected += abs_diff(v_time, t2.time(mixdist::testing::lca_by_ancestor_set(t2, list[i].leaf, list[j].leaf)));
      }
    }
    auto vt = build_virtual_subtree(t2, index, list);
    uint128 pairs = 0;
    EXPECT_EQ(partial_distance(v_time, vt, &pairs).ticks(), expected);
    EXPECT_EQ(pairs, reds * greens);
    EXPECT_EQ(vt.nodes[vt.root].color, (ColorVector{static_cast<std::uint32_t>(reds), static_cast<std::uint32_t>(greens)}));
    // Each virtual node's color equals the red/green leaves below it.
    for (std::uint32_t v = 0; v < vt.nodes.size(); ++v) {
      std::uint32_t r = 0;
      std::uint32_t g = 0;
      for (const auto& label : leaf_labels_below(t2, vt, v)) {
        const auto it = std::find_if(list.begin(), list.end(), [&](const RankedLeaf& e) { return t2.label(e.leaf) == label; });
        (it->color == LeafColor::red ? r : g) += 1;
      }
      EXPECT_EQ(vt.nodes[v].color, (ColorVector{r, g}));
    }
  }
}

TEST(FastDistance, Examples) {
  const auto a = tree("((A,B)1,C)2;");
  EXPECT_EQ(mixture_distance_fast(a, a).ticks(), 0u);
  EXPECT_EQ(mixture_distance_fast(a, tree("((A,C)1,B)2;")).ticks(), 2'000'000u);
}

TEST(FastDistance, DrivesWithShorterTreeAndTiesKeepFirst) {
  const auto deep = random_mixture_tree(mixdist::testing::spec(16, 1, Shape::caterpillar));
  const auto flat = random_comparable_pair(mixdist::testing::spec(16, 2, Shape::complete), PairMode::permuted_leaves).first;
  FastDistanceStats stats;
  mixture_distance_fast(deep, flat, &stats);
  EXPECT_TRUE(stats.swapped);
  EXPECT_EQ(stats.leaf_entries_per_level.size(), flat.height() + 1u);
  mixture_distance_fast(flat, deep, &stats);
  EXPECT_FALSE(stats.swapped);
  mixture_distance_fast(flat, flat, &stats);
  EXPECT_FALSE(stats.swapped);
}

TEST(FastDistance, InstrumentationBounds) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const std::uint64_t n = 2 + seed % 70;
    const auto [a, b] = random_comparable_pair(mixdist::testing::spec(n, seed), PairMode::independent);
    FastDistanceStats stats;
    const auto d = mixture_distance_fast(a, b, &stats);
    EXPECT_EQ(d.ticks(), mixture_distance_bruteforce(a, b).ticks());
    EXPECT_EQ(stats.pairs_counted, uint128{n} * (n - 1) / 2);
    std::uint64_t total = 0;
    for (std::uint64_t per_level : stats.leaf_entries_per_level) {
      EXPECT_LE(per_level, n);
      total += per_level;
    }
    EXPECT_LE(total, n * std::min(a.height(), b.height()));
    EXPECT_LE(stats.peak_live_entries, n);
    EXPECT_EQ(stats.rounds_mismatched, 0u);
  }
}
