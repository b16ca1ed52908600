#pragma once

// Oracles and fixtures shared by the unit and acceptance suites. Everything
// here is deliberately written against the plain tree model (parent links,
// labels, times) and never calls the engines it is used to check.

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "mixdist/newick.hpp"
#include "mixdist/tree.hpp"
#include "mixdist/treegen.hpp"

namespace mixdist::testing {

inline MixtureTree tree(std::string_view newick) { return parse_newick(newick); }

/// LCA by intersecting ancestor sets (no level arithmetic).
inline NodeId lca_by_ancestor_set(const MixtureTree& t, NodeId u, NodeId v) {
  std::set<std::uint32_t> ancestors;
  for (std::optional<NodeId> a = u; a; a = t.parent(*a)) ancestors.insert(to_index(*a));
  for (std::optional<NodeId> b = v; b; b = t.parent(*b)) {
    if (ancestors.count(to_index(*b))) return *b;
  }
  return t.root();
}

/// Cophenetic map: unordered label pair -> ticks of its LCA.
inline std::map<std::pair<std::string, std::string>, std::uint64_t> cophenetic(const MixtureTree& t) {
  std::map<std::pair<std::string, std::string>, std::uint64_t> out;
  const auto leaves = t.leaves();
  for (std::size_t i = 0; i < leaves.size(); ++i) {
    for (std::size_t j = i + 1; j < leaves.size(); ++j) {
      auto a = t.label(leaves[i]);
      auto b = t.label(leaves[j]);
      if (b < a) std::swap(a, b);
      out[{a, b}] = t.time(lca_by_ancestor_set(t, leaves[i], leaves[j])).ticks;
    }
  }
  return out;
}

/// Mixture distance straight from two cophenetic maps.
inline uint128 distance_oracle(const MixtureTree& t1, const MixtureTree& t2) {
  const auto c1 = cophenetic(t1);
  const auto c2 = cophenetic(t2);
  uint128 total = 0;
  for (const auto& [pair, p1] : c1) {
    const std::uint64_t p2 = c2.at(pair);
    total += p1 > p2 ? p1 - p2 : p2 - p1;
  }
  return total;
}

/// Leaf pair maximizing |P1 - P2| (first in label order on ties).
inline std::pair<std::string, std::string> argmax_pair(const MixtureTree& t1, const MixtureTree& t2) {
  const auto c1 = cophenetic(t1);
  const auto c2 = cophenetic(t2);
  std::pair<std::string, std::string> best;
  std::uint64_t best_diff = 0;
  bool first = true;
  for (const auto& [pair, p1] : c1) {
    const std::uint64_t p2 = c2.at(pair);
    const std::uint64_t d = p1 > p2 ? p1 - p2 : p2 - p1;
    if (first || d > best_diff) {
      best = pair;
      best_diff = d;
      first = false;
    }
  }
  return best;
}

/// Minimal subtree of `t` spanning `leaves`: keep the leaves and every
/// pairwise LCA, then give each kept node its nearest kept strict ancestor.
/// Returned as origin -> (parent origin or none, ticks).
struct ContractedNode {
  std::optional<std::uint32_t> parent;
  std::uint64_t ticks;
  bool operator==(const ContractedNode&) const = default;
};

inline std::map<std::uint32_t, ContractedNode> minimal_subtree_oracle(const MixtureTree& t,
                                                                      const std::vector<NodeId>& leaves) {
  std::set<std::uint32_t> kept;
  for (NodeId a : leaves) kept.insert(to_index(a));
  for (std::size_t i = 0; i < leaves.size(); ++i) {
    for (std::size_t j = i + 1; j < leaves.size(); ++j) {
      kept.insert(to_index(lca_by_ancestor_set(t, leaves[i], leaves[j])));
    }
  }
  std::map<std::uint32_t, ContractedNode> out;
  for (std::uint32_t id : kept) {
    ContractedNode node{std::nullopt, t.time(node_id(id)).ticks};
    for (auto a = t.parent(node_id(id)); a; a = t.parent(*a)) {
      if (kept.count(to_index(*a))) {
        node.parent = to_index(*a);
        break;
      }
    }
    out[id] = node;
  }
  return out;
}

inline GenSpec spec(std::uint64_t n, std::uint64_t seed, Shape shape = Shape::random) {
  GenSpec s;
  s.leaves = n;
  s.seed = seed;
  s.shape = shape;
  return s;
}

}  // namespace mixdist::testing
