#include "mixdist/treegen.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "mixdist/error.hpp"

namespace mixdist {

std::uint64_t SplitMix64::below(std::uint64_t bound) {
  std::uint64_t x = next();
  uint128 m = static_cast<uint128>(x) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      x = next();
      m = static_cast<uint128>(x) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

Shape parse_shape(std::string_view name) {
  if (name == "random") return Shape::random;
  if (name == "complete") return Shape::complete;
  if (name == "caterpillar") return Shape::caterpillar;
  throw Error(ErrorCode::InvalidSpec, "unknown shape '" + std::string(name) + "'");
}

std::string_view to_string(Shape shape) {
  switch (shape) {
    case Shape::random: return "random";
    case Shape::complete: return "complete";
    case Shape::caterpillar: return "caterpillar";
  }
  return "unknown";
}

PairMode parse_pair_mode(std::string_view name) {
  if (name == "independent") return PairMode::independent;
  if (name == "same_topology_jittered_times") return PairMode::same_topology_jittered_times;
  if (name == "permuted_leaves") return PairMode::permuted_leaves;
  throw Error(ErrorCode::InvalidSpec, "unknown pair mode '" + std::string(name) + "'");
}

std::string_view to_string(PairMode mode) {
  switch (mode) {
    case PairMode::independent: return "independent";
    case PairMode::same_topology_jittered_times: return "same_topology_jittered_times";
    case PairMode::permuted_leaves: return "permuted_leaves";
  }
  return "unknown";
}

namespace {

void check_spec(const GenSpec& spec) {
  if (spec.leaves < 1) throw Error(ErrorCode::InvalidSpec, "need at least one leaf");
  if (spec.leaves > (1ULL << 30)) throw Error(ErrorCode::InvalidSpec, "too many leaves");
  if (spec.shape == Shape::complete && (spec.leaves & (spec.leaves - 1)) != 0) {
    throw Error(ErrorCode::InvalidSpec, "complete shape needs a power-of-two leaf count, got " +
                                            std::to_string(spec.leaves));
  }
  if (spec.time_model.kind == TimeModel::Kind::uniform_jitter && spec.time_model.max_step == 0) {
    throw Error(ErrorCode::InvalidSpec, "uniform_jitter needs max_step >= 1");
  }
}

class MergeClock {
 public:
  MergeClock(const TimeModel& model, SplitMix64& rng) : model_(model), rng_(rng) {}

  TimeTicks next() {
    const std::uint64_t step =
        model_.kind == TimeModel::Kind::unit_coalescent ? kTicksPerUnit : 1 + rng_.below(model_.max_step);
    if (now_ > kMaxTicks - step) throw Error(ErrorCode::InvalidSpec, "merge times exceed the tick range");
    now_ += step;
    return TimeTicks{now_};
  }

 private:
  TimeModel model_;
  SplitMix64& rng_;
  std::uint64_t now_ = 0;
};

}  // namespace

MixtureTree random_mixture_tree(const GenSpec& spec) {
  check_spec(spec);
  SplitMix64 rng(spec.seed);
  SplitMix64 time_rng = rng.split();
  MergeClock clock(spec.time_model, time_rng);

  std::vector<RawNode> records;
  records.reserve(2 * spec.leaves - 1);
  std::vector<std::size_t> live;
  live.reserve(spec.leaves);
  for (std::uint64_t i = 1; i <= spec.leaves; ++i) {
    RawNode leaf;
    leaf.label = "L" + std::to_string(i);
    live.push_back(records.size());
    records.push_back(std::move(leaf));
  }
  auto merge = [&](std::size_t a, std::size_t b) {
    RawNode node;
    node.left = a;
    node.right = b;
    node.time = clock.next();
    records.push_back(std::move(node));
    return records.size() - 1;
  };

  switch (spec.shape) {
    case Shape::random:
      while (live.size() > 1) {
        const std::size_t i = rng.below(live.size());
        std::size_t j = rng.below(live.size() - 1);
        if (j >= i) ++j;
        const std::size_t joined = merge(live[i], live[j]);
        // Remove the higher position first so the lower one stays valid.
        for (std::size_t pos : {std::max(i, j), std::min(i, j)}) {
          live[pos] = live.back();
          live.pop_back();
        }
        live.push_back(joined);
      }
      break;
    case Shape::complete:
      while (live.size() > 1) {
        std::vector<std::size_t> next_level;
        for (std::size_t i = 0; i < live.size(); i += 2) next_level.push_back(merge(live[i], live[i + 1]));
        live = std::move(next_level);
      }
      break;
    case Shape::caterpillar: {
      std::size_t spine = live[0];
      for (std::size_t i = 1; i < live.size(); ++i) spine = merge(spine, live[i]);
      live = {spine};
      break;
    }
  }
  return build_tree(records, Strictness::strict);
}

MixtureTree permute_labels(const MixtureTree& tree, std::span<const std::size_t> permutation) {
  const auto leaves = tree.leaves();
  if (permutation.size() != leaves.size()) throw Error(ErrorCode::InvalidSpec, "permutation size mismatch");
  auto records = tree.to_records();
  for (std::size_t i = 0; i < leaves.size(); ++i) {
    if (permutation[i] >= leaves.size()) throw Error(ErrorCode::InvalidSpec, "permutation index out of range");
    records[to_index(leaves[i])].label = tree.label(leaves[permutation[i]]);
  }
  return build_tree(records, Strictness::strict);
}

MixtureTree jitter_times(const MixtureTree& tree, std::uint64_t max_step, SplitMix64& rng) {
  auto records = tree.to_records();
  std::vector<std::size_t> internal;
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (records[i].time) internal.push_back(i);
  }
  // Parents have strictly larger times than children, so in this order every
  // parent follows its children and receives an offset at least as large.
  std::stable_sort(internal.begin(), internal.end(),
                   [&](std::size_t a, std::size_t b) { return records[a].time->ticks < records[b].time->ticks; });
  std::uint64_t offset = 0;
  for (std::size_t i : internal) {
    if (max_step != 0) offset += rng.below(max_step + 1);
    auto& t = records[i].time->ticks;
    if (t > kMaxTicks - offset) throw Error(ErrorCode::Overflow, "jittered time exceeds the tick range");
    t += offset;
  }
  return build_tree(records, Strictness::strict);
}

MixtureTree scale_times(const MixtureTree& tree, std::uint64_t factor) {
  auto records = tree.to_records();
  for (auto& rec : records) {
    if (!rec.time) continue;
    std::uint64_t scaled = 0;
    if (__builtin_mul_overflow(rec.time->ticks, factor, &scaled) || scaled > kMaxTicks) {
      throw Error(ErrorCode::Overflow, "scaled time exceeds the tick range");
    }
    rec.time->ticks = scaled;
  }
  return build_tree(records, Strictness::weak);
}

std::pair<MixtureTree, MixtureTree> random_comparable_pair(const GenSpec& spec, PairMode mode, std::uint64_t jitter) {
  MixtureTree first = random_mixture_tree(spec);
  SplitMix64 rng(spec.seed);
  rng.next();  // keep clear of the stream that built `first`
  SplitMix64 pair_rng = rng.split();

  auto random_permutation = [&](std::size_t n) {
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[pair_rng.below(i)]);
    return perm;
  };

  switch (mode) {
    case PairMode::independent: {
      GenSpec other = spec;
      other.seed = pair_rng.next();
      MixtureTree second = random_mixture_tree(other);
      if (spec.shape != Shape::random) {
        // Fixed topologies differ only by how labels are placed.
        second = permute_labels(second, random_permutation(second.leaf_count()));
      }
      return {std::move(first), std::move(second)};
    }
    case PairMode::same_topology_jittered_times: {
      MixtureTree second = jitter_times(first, jitter, pair_rng);
      return {std::move(first), std::move(second)};
    }
    case PairMode::permuted_leaves: {
      MixtureTree second = permute_labels(first, random_permutation(first.leaf_count()));
      return {std::move(first), std::move(second)};
    }
  }
  throw Error(ErrorCode::InvalidSpec, "unknown pair mode");
}

}  // namespace mixdist
