#include "mixdist/tree.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>
#include <unordered_map>

namespace mixdist {

MixtureTree MixtureTree::assemble(std::span<const RawNode> records) {
  if (records.empty()) throw Error(ErrorCode::EmptyInput, "no nodes");
  const std::size_t count = records.size();

  std::vector<std::optional<std::size_t>> parent_of(count);
  for (std::size_t i = 0; i < count; ++i) {
    for (const auto& child : {records[i].left, records[i].right}) {
      if (!child) continue;
      if (*child >= count) {
        throw Error(ErrorCode::DanglingChild, "record " + std::to_string(i) + " refers to missing record " +
                                                  std::to_string(*child));
      }
      if (parent_of[*child]) {
        throw Error(ErrorCode::Cycle, "record " + std::to_string(*child) + " has more than one parent");
      }
      parent_of[*child] = i;
    }
  }

  std::optional<std::size_t> root;
  for (std::size_t i = 0; i < count; ++i) {
    if (parent_of[i]) continue;
    if (root) throw Error(ErrorCode::MultipleRoots, "records " + std::to_string(*root) + " and " +
                                                        std::to_string(i) + " both lack a parent");
    root = i;
  }
  if (!root) throw Error(ErrorCode::Cycle, "every record has a parent");

  MixtureTree tree;
  tree.nodes_.reserve(count);
  std::vector<std::uint32_t> new_index(count, UINT32_MAX);

  // Preorder: pop a record, emit it, push right then left.
  std::vector<std::pair<std::size_t, std::optional<NodeId>>> stack{{*root, std::nullopt}};
  while (!stack.empty()) {
    auto [raw, parent] = stack.back();
    stack.pop_back();
    const auto id = node_id(tree.nodes_.size());
    new_index[raw] = to_index(id);

    NodeRecord rec;
    rec.parent = parent;
    rec.time = records[raw].time;
    rec.label = records[raw].label;
    rec.level = parent ? tree.nodes_[to_index(*parent)].level + 1 : 0;
    tree.nodes_.push_back(std::move(rec));

    if (records[raw].right) stack.emplace_back(*records[raw].right, id);
    if (records[raw].left) stack.emplace_back(*records[raw].left, id);
  }
  if (tree.nodes_.size() != count) throw Error(ErrorCode::Cycle, "records not reachable from the root");

  for (std::size_t raw = 0; raw < count; ++raw) {
    auto& rec = tree.nodes_[new_index[raw]];
    if (records[raw].left) rec.left = node_id(new_index[*records[raw].left]);
    if (records[raw].right) rec.right = node_id(new_index[*records[raw].right]);
  }

  tree.subtree_end_.resize(count);
  for (std::size_t i = count; i-- > 0;) {
    const auto& rec = tree.nodes_[i];
    if (rec.right) {
      tree.subtree_end_[i] = tree.subtree_end_[to_index(*rec.right)];
    } else if (rec.left) {
      tree.subtree_end_[i] = tree.subtree_end_[to_index(*rec.left)];
    } else {
      tree.subtree_end_[i] = node_id(i + 1);
    }
  }

  tree.hot_.resize(count);
  tree.ticks_.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    const auto& rec = tree.nodes_[i];
    auto& hot = tree.hot_[i];
    if (rec.parent) hot.parent = to_index(*rec.parent);
    if (rec.left) hot.left = to_index(*rec.left);
    if (rec.right) hot.right = to_index(*rec.right);
    hot.level = rec.level;
    tree.ticks_[i] = rec.is_leaf() ? 0 : rec.time.value_or(TimeTicks{}).ticks;
    if (!rec.is_leaf()) continue;
    tree.leaves_.push_back(node_id(i));
    tree.height_ = std::max(tree.height_, rec.level);
    if (rec.label) tree.leaves_by_label_.push_back(node_id(i));
  }
  std::stable_sort(tree.leaves_by_label_.begin(), tree.leaves_by_label_.end(),
                   [&](NodeId a, NodeId b) { return tree.label(a) < tree.label(b); });
  return tree;
}

std::optional<NodeId> MixtureTree::find_leaf(std::string_view label) const {
  auto it = std::lower_bound(leaves_by_label_.begin(), leaves_by_label_.end(), label,
                             [&](NodeId id, std::string_view key) { return this->label(id) < key; });
  if (it == leaves_by_label_.end() || this->label(*it) != label) return std::nullopt;
  return *it;
}

std::vector<RawNode> MixtureTree::to_records() const {
  std::vector<RawNode> out(nodes_.size());
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const auto& rec = nodes_[i];
    if (rec.left) out[i].left = to_index(*rec.left);
    if (rec.right) out[i].right = to_index(*rec.right);
    out[i].time = rec.time;
    out[i].label = rec.label;
  }
  return out;
}

MixtureTree build_tree(std::span<const RawNode> records, Strictness strictness) {
  auto tree = MixtureTree::assemble(records);
  auto report = validate(tree, strictness);
  if (!report.ok()) {
    const auto& first = report.violations.front();
    std::string message = "node " + std::to_string(to_index(first.node)) + ": " + first.message;
    if (report.violations.size() > 1) {
      message += " (+" + std::to_string(report.violations.size() - 1) + " more)";
    }
    throw Error(first.code, message);
  }
  return tree;
}

ValidationReport validate(const MixtureTree& tree, Strictness strictness) {
  ValidationReport report;
  auto flag = [&](ErrorCode code, NodeId id, std::string message) {
    report.violations.push_back({code, id, std::move(message)});
  };

  std::unordered_map<std::string_view, NodeId> seen;
  for (std::size_t i = 0; i < tree.node_count(); ++i) {
    const auto id = node_id(i);
    const auto& rec = tree.node(id);
    const bool has_left = rec.left.has_value();
    const bool has_right = rec.right.has_value();

    if (has_left != has_right) {
      flag(ErrorCode::NotBinary, id, "node has exactly one child");
    }

    if (rec.is_leaf()) {
      if (!rec.label || rec.label->empty()) {
        flag(ErrorCode::MissingLabel, id, "leaf has no label");
      } else if (auto [it, inserted] = seen.emplace(*rec.label, id); !inserted) {
        flag(ErrorCode::DuplicateLabel, id,
             "label '" + *rec.label + "' already used by node " + std::to_string(to_index(it->second)));
      }
      if (rec.time) flag(ErrorCode::UnexpectedTime, id, "leaf carries a mutation time");
      continue;
    }

    if (rec.label) flag(ErrorCode::UnexpectedLabel, id, "internal node carries a label");
    if (!rec.time) {
      flag(ErrorCode::MissingTime, id, "internal node has no mutation time");
      continue;
    }
    if (strictness == Strictness::strict && rec.time->ticks == 0) {
      flag(ErrorCode::NonMonotoneTime, id, "internal node time must be positive");
    }
    for (const auto& child : {rec.left, rec.right}) {
      if (!child) continue;
      const auto& c = tree.node(*child);
      if (c.is_leaf() || !c.time) continue;
      const bool ok = strictness == Strictness::strict ? rec.time->ticks > c.time->ticks
                                                       : rec.time->ticks >= c.time->ticks;
      if (!ok) {
        flag(ErrorCode::NonMonotoneTime, id,
             "time " + format_time(*rec.time) + " does not exceed child time " + format_time(*c.time));
      }
    }
  }
  return report;
}

std::vector<NodeId> level_order(const MixtureTree& tree, bool internal_only) {
  std::vector<NodeId> order;
  order.reserve(tree.node_count());
  order.push_back(tree.root());
  for (std::size_t head = 0; head < order.size(); ++head) {
    const auto& rec = tree.node(order[head]);
    if (rec.left) order.push_back(*rec.left);
    if (rec.right) order.push_back(*rec.right);
  }
  if (internal_only) std::erase_if(order, [&](NodeId id) { return tree.is_leaf(id); });
  return order;
}

std::vector<std::uint32_t> postorder_leaf_ranks(const MixtureTree& tree) {
  // Preorder and postorder visit the leaves of a binary tree in the same
  // left-to-right order, so the stored leaf sequence already is the ranking.
  std::vector<std::uint32_t> ranks(tree.node_count(), 0);
  std::uint32_t next = 1;
  for (NodeId leaf : tree.leaves()) ranks[to_index(leaf)] = next++;
  return ranks;
}

LeafBijection check_comparable(const MixtureTree& t1, const MixtureTree& t2) {
  LeafBijection bij;
  bij.image.assign(t1.node_count(), NodeId{0});
  std::set<std::string> extra;
  std::set<std::string> missing;

  // Merge the two label-sorted leaf lists.
  const auto a = t1.leaves_by_label();
  const auto b = t2.leaves_by_label();
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && t1.label(a[i]) < t2.label(b[j]))) {
      extra.insert(t1.label(a[i++]));
    } else if (i == a.size() || t2.label(b[j]) < t1.label(a[i])) {
      missing.insert(t2.label(b[j++]));
    } else {
      bij.image[to_index(a[i++])] = b[j++];
    }
  }

  if (!extra.empty() || !missing.empty() || t1.leaf_count() != t2.leaf_count()) {
    auto join = [](const std::set<std::string>& items) {
      std::string out;
      for (const auto& s : items) out += (out.empty() ? "" : ",") + s;
      return out;
    };
    throw Error(ErrorCode::NotComparable, "missing: {" + join(missing) + "}, extra: {" + join(extra) + "}");
  }
  return bij;
}

NodeId lca_naive(const MixtureTree& tree, NodeId u, NodeId v) {
  while (tree.level(u) > tree.level(v)) u = *tree.parent(u);
  while (tree.level(v) > tree.level(u)) v = *tree.parent(v);
  while (u != v) {
    u = *tree.parent(u);
    v = *tree.parent(v);
  }
  return u;
}

namespace {

// Bottom-up canonical class ids shared by both trees: a leaf's class is its
// label, an internal node's class is (time, unordered pair of child classes).
class Canonicalizer {
 public:
  std::uint32_t root_class(const MixtureTree& tree) {
    std::vector<std::uint32_t> cls(tree.node_count());
    for (std::size_t i = tree.node_count(); i-- > 0;) {
      const auto id = node_id(i);
      if (tree.is_leaf(id)) {
        cls[i] = intern_leaf(tree.label(id));
        continue;
      }
      auto a = cls[to_index(tree.left(id))];
      auto b = cls[to_index(tree.right(id))];
      if (a > b) std::swap(a, b);
      cls[i] = intern_internal(tree.time(id).ticks, a, b);
    }
    return cls[0];
  }

 private:
  std::uint32_t next_id() { return next_++; }
  std::uint32_t intern_leaf(const std::string& label) {
    auto [it, inserted] = leaves_.try_emplace(label, 0);
    if (inserted) it->second = next_id();
    return it->second;
  }
  std::uint32_t intern_internal(std::uint64_t time, std::uint32_t a, std::uint32_t b) {
    auto [it, inserted] = internals_.try_emplace(std::make_tuple(time, a, b), 0);
    if (inserted) it->second = next_id();
    return it->second;
  }

  std::uint32_t next_ = 0;
  std::unordered_map<std::string, std::uint32_t> leaves_;
  std::map<std::tuple<std::uint64_t, std::uint32_t, std::uint32_t>, std::uint32_t> internals_;
};

}  // namespace

bool trees_identical(const MixtureTree& t1, const MixtureTree& t2) {
  if (t1.node_count() != t2.node_count()) return false;
  Canonicalizer canon;
  return canon.root_class(t1) == canon.root_class(t2);
}

}  // namespace mixdist
