#include "mixdist/lca_index.hpp"

#include <algorithm>

namespace mixdist {

BlockRmq::BlockRmq(std::vector<std::uint32_t> keys) : keys_(std::move(keys)) {
  const auto length = static_cast<std::uint32_t>(keys_.size());
  if (length == 0) return;
  const std::uint32_t blocks = (length + kBlock - 1) / kBlock;

  row_offset_.push_back(0);
  table_.resize(blocks);
  for (std::uint32_t b = 0; b < blocks; ++b) {
    table_[b] = scan(b * kBlock, std::min(length, (b + 1) * kBlock) - 1);
  }
  for (unsigned k = 1; (1u << k) <= blocks; ++k) {
    const std::size_t prev = row_offset_.back();
    const std::uint32_t half = 1u << (k - 1);
    const std::size_t size = blocks - (1u << k) + 1;
    row_offset_.push_back(table_.size());
    table_.resize(table_.size() + size);
    for (std::size_t i = 0; i < size; ++i) {
      table_[row_offset_.back() + i] = pick(table_[prev + i], table_[prev + i + half]);
    }
  }
}

LcaIndex::LcaIndex(const MixtureTree& tree) {
  const std::size_t count = tree.node_count();
  std::vector<std::uint32_t> depth;
  tour_.reserve(2 * count - 1);
  depth.reserve(2 * count - 1);
  first_.assign(count, 0);

  // Iterative DFS; a node is re-emitted after each child returns.
  std::vector<std::pair<NodeId, int>> stack{{tree.root(), 0}};
  while (!stack.empty()) {
    auto& [id, next_child] = stack.back();
    const auto& rec = tree.node(id);
    if (next_child == 0) first_[to_index(id)] = static_cast<std::uint32_t>(tour_.size());
    tour_.push_back(id);
    depth.push_back(rec.level);
    if (next_child == 0 && rec.left) {
      next_child = 1;
      stack.emplace_back(*rec.left, 0);
    } else if (next_child == 1 && rec.right) {
      next_child = 2;
      stack.emplace_back(*rec.right, 0);
    } else {
      stack.pop_back();
    }
  }
  tour_rmq_ = BlockRmq(std::move(depth));

  const auto leaves = tree.leaves();
  leaf_level_.reserve(leaves.size());
  for (NodeId leaf : leaves) leaf_level_.push_back(tree.level(leaf));
  if (leaves.size() < 2) return;

  gaps_.reserve(leaves.size() - 1);
  std::vector<std::uint32_t> gap_levels;
  gap_levels.reserve(leaves.size() - 1);
  for (std::size_t r = 0; r + 1 < leaves.size(); ++r) {
    const NodeId joint = query(leaves[r], leaves[r + 1]);
    gaps_.push_back({joint, tree.level(joint), tree.time(joint)});
    gap_levels.push_back(tree.level(joint));
  }
  gap_rmq_ = BlockRmq(std::move(gap_levels));
}

}  // namespace mixdist
