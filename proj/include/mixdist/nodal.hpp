#pragma once

#include <cstdint>

#include "mixdist/kernels.hpp"
#include "mixdist/lca_index.hpp"
#include "mixdist/tree.hpp"

namespace mixdist {

/// Number of edges on a leaf-to-leaf path.
struct PathLength {
  std::uint32_t edges = 0;

  friend bool operator==(PathLength, PathLength) = default;
};

/// level(x) + level(y) - 2 level(LCA(x, y)).
PathLength path_length(const MixtureTree& tree, const LcaIndex& index, NodeId x, NodeId y);

/// Nodal distance: sum over unordered leaf pairs of |path-length difference|.
/// Topological only; mutation times play no part. O(n^2) LCA queries, each
/// leaf's row of differences reduced by the selected abs-diff kernel.
std::uint64_t nodal_distance(const MixtureTree& t1, const MixtureTree& t2);
std::uint64_t nodal_distance(const MixtureTree& t1, const MixtureTree& t2, kernels::Isa isa);

}  // namespace mixdist
