#pragma once

#include <vector>

#include "wb/group.hpp"

namespace wb {

/// One vertex: a class representative (Gamma, psi) with Gamma a subgroup
/// representative of the ambient group and psi a monomorphism F -> Gamma.
struct ConvivialityVertex {
  FiniteGroup group;
  std::vector<int> psi; // image of each F element
};

/// Vertices plus a symmetric adjacency matrix (diagonal always true). For a
/// quotient graph, `cells` records which input vertices were merged.
struct ConvivialityGraph {
  FiniteGroup ambient;
  FiniteGroup f_group;
  std::vector<ConvivialityVertex> vertices;
  std::vector<std::uint8_t> adjacency; // n*n
  std::vector<std::vector<std::size_t>> cells;

  bool adjacent(std::size_t i, std::size_t j) const {
    return adjacency[i * vertices.size() + j] != 0;
  }
};

/// All subgroups of g as sorted element lists, deterministic order.
std::vector<std::vector<int>> subgroups_of(const FiniteGroup& g,
                                           const Limits& lim = default_limits());

/// The subgroup as a FiniteGroup: elements reindexed ascending, names taken
/// from the parent.
FiniteGroup subgroup_as_group(const FiniteGroup& g, const std::vector<int>& elements);

/// Vertices are the (Gamma, psi) classes over subgroup representatives of
/// ambient up to isomorphism, psi up to automorphism transport; an edge
/// records a pair of embeddings into ambient agreeing on F. Finite
/// restriction of the elementary conviviality graph.
ConvivialityGraph elementary_conviviality_graph(const FiniteGroup& ambient,
                                                const FiniteGroup& f_group,
                                                const Limits& lim = default_limits());

/// Merges vertices with identical neighbour rows; adjacency inherited from
/// representatives.
ConvivialityGraph quotient_conviviality_graph(const ConvivialityGraph& g);

} // namespace wb
