#include "mixdist/nodal.hpp"

#include <vector>

#include "mixdist/error.hpp"

namespace mixdist {

PathLength path_length(const MixtureTree& tree, const LcaIndex& index, NodeId x, NodeId y) {
  const NodeId joint = index.query(x, y);
  return {tree.level(x) + tree.level(y) - 2 * tree.level(joint)};
}

namespace {

// Path lengths from one leaf to every leaf, in the tree's left-to-right leaf
// order. Walking up from x, the sibling subtree at each ancestor a is a
// contiguous run of leaves, all at distance level(y) + level(x) - 2 level(a).
class RowFiller {
 public:
  explicit RowFiller(const MixtureTree& tree) : tree_(tree), first_(tree.node_count()), last_(tree.node_count()) {
    const auto leaves = tree.leaves();
    leaf_level_.resize(leaves.size());
    for (std::size_t k = 0; k < leaves.size(); ++k) {
      first_[to_index(leaves[k])] = last_[to_index(leaves[k])] = static_cast<std::uint32_t>(k);
      leaf_level_[k] = static_cast<std::int32_t>(tree.level(leaves[k]));
    }
    // Preorder numbering: children always follow their parent.
    for (std::size_t i = tree.node_count(); i-- > 0;) {
      const NodeId v = node_id(i);
      if (tree.is_leaf(v)) continue;
      first_[i] = first_[to_index(tree.left(v))];
      last_[i] = last_[to_index(tree.right(v))];
    }
  }

  std::uint32_t position(NodeId leaf) const { return first_[to_index(leaf)]; }

  void fill(NodeId x, std::span<std::int32_t> row) const {
    const auto lx = static_cast<std::int32_t>(tree_.level(x));
    row[first_[to_index(x)]] = 0;
    NodeId v = x;
    while (const auto up = tree_.parent(v)) {
      const NodeId a = *up;
      const NodeId sibling = tree_.left(a) == v ? tree_.right(a) : tree_.left(a);
      const std::int32_t offset = lx - 2 * static_cast<std::int32_t>(tree_.level(a));
      for (std::uint32_t k = first_[to_index(sibling)]; k <= last_[to_index(sibling)]; ++k) {
        row[k] = leaf_level_[k] + offset;
      }
      v = a;
    }
  }

 private:
  const MixtureTree& tree_;
  std::vector<std::uint32_t> first_;
  std::vector<std::uint32_t> last_;
  std::vector<std::int32_t> leaf_level_;
};

std::uint64_t nodal_with(const MixtureTree& t1, const MixtureTree& t2, kernels::AbsDiffSumFn reduce) {
  const auto bij = check_comparable(t1, t2);
  const RowFiller rows1(t1);
  const RowFiller rows2(t2);
  const auto leaves = t1.leaves();
  const std::size_t n = leaves.size();

  // gather[j]: position in T2's leaf order of the image of T1's j-th leaf.
  std::vector<std::uint32_t> gather(n);
  for (std::size_t j = 0; j < n; ++j) gather[j] = rows2.position(bij(leaves[j]));

  std::vector<std::int32_t> row1(n);
  std::vector<std::int32_t> row2_native(n);
  std::vector<std::int32_t> row2(n);
  std::uint64_t total = 0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    rows1.fill(leaves[i], row1);
    rows2.fill(bij(leaves[i]), row2_native);
    const std::size_t width = n - i - 1;
    for (std::size_t j = 0; j < width; ++j) row2[j] = row2_native[gather[i + 1 + j]];
    total += reduce(std::span(row1).subspan(i + 1, width), std::span(row2).first(width));
  }
  return total;
}

}  // namespace

std::uint64_t nodal_distance(const MixtureTree& t1, const MixtureTree& t2) {
  return nodal_with(t1, t2, kernels::abs_diff_sum_for(kernels::preferred_isa()));
}

std::uint64_t nodal_distance(const MixtureTree& t1, const MixtureTree& t2, kernels::Isa isa) {
  auto fn = kernels::abs_diff_sum_for(isa);
  if (!fn) throw Error(ErrorCode::InvalidSpec, "kernel variant unavailable: " + std::string(kernels::to_string(isa)));
  return nodal_with(t1, t2, fn);
}

}  // namespace mixdist
