#include "mixdist/distance.hpp"

#include <algorithm>

#include "mixdist/error.hpp"
#include "mixdist/fast_distance.hpp"

namespace mixdist {

std::uint64_t DistanceAccumulator::to_u64() const {
  if (total_ > UINT64_MAX) throw_overflow();
  return static_cast<std::uint64_t>(total_);
}

void DistanceAccumulator::throw_overflow() {
  throw Error(ErrorCode::Overflow, "mixture distance exceeds the accumulator range");
}

void check_distance_bound(std::uint64_t leaf_count, std::uint64_t max_ticks) {
  if (leaf_count < 2) return;
  const uint128 n = leaf_count;
  const uint128 pairs = n * (n - 1) / 2;
  uint128 bound = 0;
  if (__builtin_mul_overflow(pairs, static_cast<uint128>(max_ticks), &bound)) {
    throw Error(ErrorCode::Overflow, "C(n,2) * max time is not representable");
  }
}

TimeTicks max_time(const MixtureTree& tree) {
  TimeTicks best{};
  for (std::size_t i = 0; i < tree.node_count(); ++i) best = std::max(best, tree.time(node_id(i)));
  return best;
}

TimeTicks lca_time(const MixtureTree& tree, const LcaIndex& index, NodeId u, NodeId v) {
  if (u == v) throw Error(ErrorCode::SameLeaf, "P(u, v) needs two distinct leaves");
  return tree.time(index.query(u, v));
}

namespace {
void prescreen(const MixtureTree& t1, const MixtureTree& t2) {
  check_distance_bound(t1.leaf_count(), std::max(max_time(t1), max_time(t2)).ticks);
}
}  // namespace

DistanceAccumulator mixture_distance_bruteforce(const MixtureTree& t1, const MixtureTree& t2) {
  const auto bij = check_comparable(t1, t2);
  prescreen(t1, t2);
  DistanceAccumulator total;
  const auto leaves = t1.leaves();
  for (std::size_t i = 0; i < leaves.size(); ++i) {
    for (std::size_t j = i + 1; j < leaves.size(); ++j) {
      const TimeTicks p1 = t1.time(lca_naive(t1, leaves[i], leaves[j]));
      const TimeTicks p2 = t2.time(lca_naive(t2, bij(leaves[i]), bij(leaves[j])));
      total.add(abs_diff(p1, p2));
    }
  }
  return total;
}

DistanceAccumulator mixture_distance_coloring(const MixtureTree& t1, const MixtureTree& t2, ColoringStats* stats) {
  const auto bij = check_comparable(t1, t2);
  prescreen(t1, t2);
  DistanceAccumulator total;

  const auto outer = level_order(t1, true);
  auto inner = level_order(t2, true);
  std::reverse(inner.begin(), inner.end());

  // Scratch indexed by T2 node; leaf colors are valid only when stamped with
  // the current epoch, so nothing is cleared between rounds.
  std::vector<ColorVector> color(t2.node_count());
  std::vector<std::uint32_t> stamp(t2.node_count(), 0);
  std::uint32_t epoch = 0;

  auto paint = [&](NodeId subtree, ColorVector c) {
    std::uint64_t painted = 0;
    for (auto i = to_index(subtree); i < to_index(t1.subtree_end(subtree)); ++i) {
      const auto id = node_id(i);
      if (!t1.is_leaf(id)) continue;
      const auto image = to_index(bij(id));
      stamp[image] = epoch;
      color[image] = c;
      ++painted;
    }
    return painted;
  };
  auto color_of = [&](NodeId w) -> ColorVector {
    const auto i = to_index(w);
    if (t2.is_leaf(w) && stamp[i] != epoch) return {};
    return color[i];
  };

  for (NodeId v : outer) {
    ++epoch;
    const std::uint64_t reds = paint(t1.left(v), {1, 0});
    const std::uint64_t greens = paint(t1.right(v), {0, 1});
    const TimeTicks v_time = t1.time(v);
    uint128 round_pairs = 0;
    for (NodeId u : inner) {
      const ColorVector lc = color_of(t2.left(u));
      const ColorVector rc = color_of(t2.right(u));
      const std::uint64_t number = pair_product(lc, rc);
      if (number != 0) {
        total.add_product(abs_diff(v_time, t2.time(u)), number);
        round_pairs += number;
      }
      color[to_index(u)] = lc + rc;
    }
    if (stats) {
      stats->pairs_counted += round_pairs;
      if (round_pairs != static_cast<uint128>(reds) * greens) ++stats->rounds_mismatched;
    }
  }
  return total;
}

std::string_view to_string(Algorithm algo) {
  switch (algo) {
    case Algorithm::naive: return "naive";
    case Algorithm::coloring: return "coloring";
    case Algorithm::fast: return "fast";
  }
  return "unknown";
}

Algorithm parse_algorithm(std::string_view name) {
  if (name == "naive") return Algorithm::naive;
  if (name == "coloring") return Algorithm::coloring;
  if (name == "fast") return Algorithm::fast;
  throw Error(ErrorCode::InvalidSpec, "unknown algorithm '" + std::string(name) + "'");
}

DistanceAccumulator mixture_distance(const MixtureTree& t1, const MixtureTree& t2, Algorithm algo) {
  switch (algo) {
    case Algorithm::naive: return mixture_distance_bruteforce(t1, t2);
    case Algorithm::coloring: return mixture_distance_coloring(t1, t2);
    case Algorithm::fast: return mixture_distance_fast(t1, t2);
  }
  throw Error(ErrorCode::InvalidSpec, "unknown algorithm");
}

}  // namespace mixdist
