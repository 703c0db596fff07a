#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wb/group.hpp"
#include "wb/matroid.hpp"
#include "wb/multigraph.hpp"

namespace wb {

/// A group labelling of a multigraph. Each edge stores one element for its
/// listed orientation (u,v); the reverse read is the inverse. A loop stores
/// one element used as-is.
struct Gaining {
  Multigraph graph;
  FiniteGroup group;
  std::vector<int> gain; // one element per edge, in edge-list order

  void validate() const;

  /// Gain of edge e read from `from` to `to`.
  int gain_of(int e, int from, int to) const;
  /// Ordered product along a traversal of a cycle.
  int cycle_gain(const Cycle& c) const;

  bool is_unbalanced_loop(int e) const {
    return graph.edges[static_cast<std::size_t>(e)].is_loop() && gain[static_cast<std::size_t>(e)] != 0;
  }
};

/// Ordered product of oriented edge gains along an incidence-valid walk
/// v0 e0 v1 e1 ... (|vertices| = |edges| + 1).
int walk_gain(const Gaining& g, const std::vector<int>& vertices, const std::vector<int>& edges);

/// Graph plus a linear class of balanced cycles: no theta subgraph contains
/// exactly two balanced cycles.
struct BiasedGraph {
  Multigraph graph;
  std::vector<Cycle> cycles;          // every cycle, canonical order
  std::vector<std::uint8_t> balanced; // flag per cycle

  bool is_balanced(Mask cycle_edges) const;
  std::vector<Mask> balanced_masks() const;
};

/// First theta witnessing a linear-class violation, or nullopt.
std::optional<Mask> linear_class_violation(const BiasedGraph& b);

/// Biased graph whose balanced set is exactly the identity-gain cycles.
BiasedGraph balanced_cycles(const Gaining& g, const Limits& lim = default_limits());

/// Builds a biased graph from an explicit balanced family and verifies the
/// linear-class invariant.
BiasedGraph make_biased(const Multigraph& graph, const std::vector<Mask>& balanced,
                        const Limits& lim = default_limits());

/// σ^ρ: conjugates each non-loop gain, ρ(u)^{-1}σ(e,u,v)ρ(v); loops unchanged.
Gaining switch_gains(const Gaining& g, const std::vector<int>& rho);
/// Switching that makes every maximal-forest edge gain the identity.
Gaining switch_normalize_forest(const Gaining& g);

/// Frame matroid: circuits are balanced cycles and bicycles containing no
/// balanced cycle. Materializes the independence table (edge count capped).
Matroid frame_matroid(const BiasedGraph& b, const Limits& lim = default_limits());
Matroid frame_matroid(const Gaining& g, const Limits& lim = default_limits());

/// Rank of an edge subset straight from the rank formula
/// |V(G[X])| − #(components of G[X] containing no unbalanced cycle),
/// with balance decided by potentials. Works at any edge count.
int frame_rank(const Gaining& g, Mask edge_subset);

/// Whether every cycle inside the edge subset is balanced (the subset need
/// not be connected; all components must be balanced).
bool all_balanced(const Gaining& g, Mask edge_subset);

/// Gain-graph amalgam over the two shared vertices. Requires: the vertex
/// sets meet exactly in {u,v}, the shared-label subgraphs coincide, shared
/// gains agree, and the groups are identical values.
Gaining gain_graph_amalgam(const Gaining& a, const Gaining& b,
                           const std::string& u, const std::string& v);

} // namespace wb
