#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mixdist/error.hpp"
#include "mixdist/time_ticks.hpp"

namespace mixdist {

/// Index into a tree's node array. The root is always node 0 and nodes are
/// stored in preorder (left subtree before right subtree).
enum class NodeId : std::uint32_t {};

constexpr std::uint32_t to_index(NodeId id) { return static_cast<std::uint32_t>(id); }
constexpr NodeId node_id(std::size_t index) { return static_cast<NodeId>(static_cast<std::uint32_t>(index)); }

enum class Strictness {
  strict,  // m(parent) > m(child), m(internal) > 0
  weak,    // m(parent) >= m(child); trees with tied times may be distinct at distance 0
};

/// Unvalidated node description used to build trees. Children refer to
/// positions in the same record array; record order is arbitrary.
struct RawNode {
  std::optional<std::size_t> left;
  std::optional<std::size_t> right;
  std::optional<TimeTicks> time;
  std::optional<std::string> label;
};

struct NodeRecord {
  std::optional<NodeId> parent;
  std::optional<NodeId> left;
  std::optional<NodeId> right;
  std::optional<TimeTicks> time;
  std::optional<std::string> label;
  std::uint32_t level = 0;

  bool is_leaf() const { return !left && !right; }
};

struct Violation {
  ErrorCode code;
  NodeId node;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
};

class MixtureTree {
 public:
  /// Links records into a rooted tree and renumbers nodes in preorder. Only
  /// graph-shape problems are detected here (EmptyInput, MultipleRoots, Cycle,
  /// DanglingChild); everything else is left to validate().
  static MixtureTree assemble(std::span<const RawNode> records);

  std::size_t node_count() const { return nodes_.size(); }
  std::size_t leaf_count() const { return leaves_.size(); }
  std::uint32_t height() const { return height_; }
  NodeId root() const { return NodeId{0}; }

  const NodeRecord& node(NodeId id) const { return nodes_[to_index(id)]; }
  std::span<const NodeRecord> nodes() const { return nodes_; }

  // Hot-path accessors read compact arrays mirroring the node records.
  bool is_leaf(NodeId id) const {
    const auto& h = hot_[to_index(id)];
    return h.left == kNone && h.right == kNone;
  }
  std::uint32_t level(NodeId id) const { return hot_[to_index(id)].level; }
  std::optional<NodeId> parent(NodeId id) const {
    const auto p = hot_[to_index(id)].parent;
    return p == kNone ? std::nullopt : std::optional<NodeId>(node_id(p));
  }
  NodeId left(NodeId id) const { return node_id(hot_[to_index(id)].left); }
  NodeId right(NodeId id) const { return node_id(hot_[to_index(id)].right); }
  /// Mutation time; zero for leaves.
  TimeTicks time(NodeId id) const { return TimeTicks{ticks_[to_index(id)]}; }
  const std::string& label(NodeId id) const { return *node(id).label; }

  /// Leaves in left-to-right order.
  std::span<const NodeId> leaves() const { return leaves_; }
  /// Labeled leaves sorted by label (ties in leaf order).
  std::span<const NodeId> leaves_by_label() const { return leaves_by_label_; }
  std::optional<NodeId> find_leaf(std::string_view label) const;

  /// One past the last node of the subtree rooted at `id` (preorder range).
  NodeId subtree_end(NodeId id) const { return subtree_end_[to_index(id)]; }

  /// Records in preorder, suitable for editing and rebuilding.
  std::vector<RawNode> to_records() const;

 private:
  static constexpr std::uint32_t kNone = UINT32_MAX;
  struct HotLinks {
    std::uint32_t parent = kNone;
    std::uint32_t left = kNone;
    std::uint32_t right = kNone;
    std::uint32_t level = 0;
  };

  std::vector<NodeRecord> nodes_;
  std::vector<HotLinks> hot_;
  std::vector<std::uint64_t> ticks_;
  std::vector<NodeId> leaves_;
  std::vector<NodeId> leaves_by_label_;
  std::vector<NodeId> subtree_end_;
  std::uint32_t height_ = 0;
};

/// Maps each leaf of T1 onto the equally labeled leaf of T2.
struct LeafBijection {
  std::vector<NodeId> image;  // indexed by T1 node; meaningful for leaves only

  NodeId operator()(NodeId t1_leaf) const { return image[to_index(t1_leaf)]; }
};

/// assemble() followed by validate(); throws the first violation.
MixtureTree build_tree(std::span<const RawNode> records, Strictness strictness = Strictness::strict);

ValidationReport validate(const MixtureTree& tree, Strictness strictness);

/// Breadth-first order from the root, left child before right child.
std::vector<NodeId> level_order(const MixtureTree& tree, bool internal_only);

/// Leaf ranks 1..n in postorder (= left-to-right leaf order), indexed by node.
/// Internal nodes hold 0.
std::vector<std::uint32_t> postorder_leaf_ranks(const MixtureTree& tree);

/// Throws Error(NotComparable) naming the labels missing from T1 and the extra ones.
LeafBijection check_comparable(const MixtureTree& t1, const MixtureTree& t2);

/// Walk-up LCA: equalize levels, then step both nodes up. O(height).
NodeId lca_naive(const MixtureTree& tree, NodeId u, NodeId v);

/// Label-preserving isomorphism that also preserves times; child order ignored.
bool trees_identical(const MixtureTree& t1, const MixtureTree& t2);

}  // namespace mixdist
