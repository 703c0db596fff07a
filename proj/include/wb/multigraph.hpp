#pragma once

#include <string>
#include <vector>

#include "wb/limits.hpp"
#include "wb/subset.hpp"

namespace wb {

/// Undirected multigraph; loops (u == v) and parallel edges allowed.
/// Edge subsets are masks over the edge list order.
struct Multigraph {
  struct Edge {
    std::string label;
    int u = 0;
    int v = 0;
    bool is_loop() const { return u == v; }
  };

  std::vector<std::string> vertices;
  std::vector<Edge> edges;

  int vertex_count() const { return static_cast<int>(vertices.size()); }
  int edge_count() const { return static_cast<int>(edges.size()); }
  int vertex_index(const std::string& name) const;
  int edge_index(const std::string& label) const;
  Mask full_edge_mask() const {
    return edge_count() == 64 ? ~Mask{0} : (bit(edge_count()) - 1);
  }

  int add_vertex(const std::string& name);
  int add_edge(const std::string& label, int u, int v);

  void validate() const;

  /// Vertices incident to at least one edge of the mask.
  std::vector<int> incident_vertices(Mask edge_mask) const;
  /// Connected components of the subgraph spanned by edge_mask; each entry
  /// holds the component's edge mask and its incident vertices.
  struct Component {
    Mask edges = 0;
    std::vector<int> vertices;
  };
  std::vector<Component> components(Mask edge_mask) const;

  /// Edge mask of a maximal forest (loops never included), greedy in edge order.
  Mask maximal_forest() const;
};

/// A cycle: connected edge set, every incident vertex of degree 2 (a loop
/// contributes 2). Traversal is canonical: starts at the least incident
/// vertex, first step along the lesser edge label.
struct Cycle {
  Mask edges = 0;
  /// step i leaves traversal_vertices[i] along traversal_edges[i].
  std::vector<int> traversal_vertices;
  std::vector<int> traversal_edges;

  int size() const { return static_cast<int>(traversal_edges.size()); }
};

enum class BicycleKind { Theta, TightHandcuff, LooseHandcuff };

/// Minimal connected edge set containing two cycles.
struct Bicycle {
  Mask edges = 0;
  BicycleKind kind = BicycleKind::Theta;
  Cycle first;
  Cycle second;
};

struct InducedSubgraph {
  Multigraph graph;
  int component_count = 0;
};

/// Subgraph with exactly the given edges plus their incident vertices.
InducedSubgraph induced_subgraph(const Multigraph& g, Mask edge_mask);
InducedSubgraph induced_subgraph(const Multigraph& g, const std::vector<std::string>& edge_labels);

/// Every cycle exactly once; ordered by size then lexicographic sorted labels.
std::vector<Cycle> enumerate_cycles(const Multigraph& g, const Limits& lim = default_limits());

/// Every bicycle exactly once, kind-classified, canonical order.
std::vector<Bicycle> enumerate_bicycles(const Multigraph& g, const Limits& lim = default_limits());

/// Canonical traversal for a validated cycle edge set.
Cycle make_cycle(const Multigraph& g, Mask edge_mask);

/// Sorted labels for canonical comparisons.
std::vector<std::string> edge_labels_of(const Multigraph& g, Mask m);

} // namespace wb
