#include "wb/multigraph.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "wb/error.hpp"

namespace wb {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[static_cast<std::size_t>(b)] = a;
    return true;
  }
};

} // namespace

int Multigraph::vertex_index(const std::string& name) const {
  for (int i = 0; i < vertex_count(); ++i)
    if (vertices[static_cast<std::size_t>(i)] == name) return i;
  return -1;
}

int Multigraph::edge_index(const std::string& label) const {
  for (int i = 0; i < edge_count(); ++i)
    if (edges[static_cast<std::size_t>(i)].label == label) return i;
  return -1;
}

int Multigraph::add_vertex(const std::string& name) {
  if (vertex_index(name) >= 0) throw InputError("multigraph: duplicate vertex " + name);
  vertices.push_back(name);
  return vertex_count() - 1;
}

int Multigraph::add_edge(const std::string& label, int u, int v) {
  if (edge_index(label) >= 0) throw InputError("multigraph: duplicate edge label " + label);
  if (u < 0 || u >= vertex_count() || v < 0 || v >= vertex_count())
    throw InputError("multigraph: edge endpoint out of range for " + label);
  if (edge_count() >= 64) throw InputError("multigraph: more than 64 edges");
  edges.push_back(Edge{label, u, v});
  return edge_count() - 1;
}

void Multigraph::validate() const {
  std::set<std::string> vl(vertices.begin(), vertices.end());
  if (vl.size() != vertices.size()) throw InputError("multigraph: duplicate vertex names");
  std::set<std::string> el;
  for (const Edge& e : edges) {
    if (!el.insert(e.label).second) throw InputError("multigraph: duplicate edge label " + e.label);
    if (e.u < 0 || e.u >= vertex_count() || e.v < 0 || e.v >= vertex_count())
      throw InputError("multigraph: dangling endpoint on " + e.label);
  }
}

std::vector<int> Multigraph::incident_vertices(Mask edge_mask) const {
  std::vector<bool> in(static_cast<std::size_t>(vertex_count()));
  for_each_bit(edge_mask, [&](int i) {
    in[static_cast<std::size_t>(edges[static_cast<std::size_t>(i)].u)] = true;
    in[static_cast<std::size_t>(edges[static_cast<std::size_t>(i)].v)] = true;
  });
  std::vector<int> out;
  for (int v = 0; v < vertex_count(); ++v)
    if (in[static_cast<std::size_t>(v)]) out.push_back(v);
  return out;
}

std::vector<Multigraph::Component> Multigraph::components(Mask edge_mask) const {
  UnionFind uf(vertex_count());
  for_each_bit(edge_mask, [&](int i) {
    uf.unite(edges[static_cast<std::size_t>(i)].u, edges[static_cast<std::size_t>(i)].v);
  });
  std::map<int, Component> by_root;
  for_each_bit(edge_mask, [&](int i) {
    by_root[uf.find(edges[static_cast<std::size_t>(i)].u)].edges |= bit(i);
  });
  for (int v : incident_vertices(edge_mask)) by_root[uf.find(v)].vertices.push_back(v);
  std::vector<Component> out;
  for (auto& [root, comp] : by_root) out.push_back(std::move(comp));
  return out;
}

Mask Multigraph::maximal_forest() const {
  UnionFind uf(vertex_count());
  Mask forest = 0;
  for (int i = 0; i < edge_count(); ++i) {
    const Edge& e = edges[static_cast<std::size_t>(i)];
    if (e.is_loop()) continue;
    if (uf.unite(e.u, e.v)) forest |= bit(i);
  }
  return forest;
}

InducedSubgraph induced_subgraph(const Multigraph& g, Mask edge_mask) {
  if (edge_mask & ~g.full_edge_mask()) throw InputError("induced_subgraph: edge mask out of range");
  InducedSubgraph out;
  std::vector<int> verts = g.incident_vertices(edge_mask);
  std::vector<int> vmap(static_cast<std::size_t>(g.vertex_count()), -1);
  for (int v : verts) {
    vmap[static_cast<std::size_t>(v)] = out.graph.vertex_count();
    out.graph.vertices.push_back(g.vertices[static_cast<std::size_t>(v)]);
  }
  for_each_bit(edge_mask, [&](int i) {
    const auto& e = g.edges[static_cast<std::size_t>(i)];
    out.graph.edges.push_back(Multigraph::Edge{e.label, vmap[static_cast<std::size_t>(e.u)],
                                               vmap[static_cast<std::size_t>(e.v)]});
  });
  out.component_count = static_cast<int>(g.components(edge_mask).size());
  return out;
}

InducedSubgraph induced_subgraph(const Multigraph& g, const std::vector<std::string>& edge_labels) {
  Mask m = 0;
  for (const auto& l : edge_labels) {
    int i = g.edge_index(l);
    if (i < 0) throw InputError("induced_subgraph: unknown edge label " + l);
    m |= bit(i);
  }
  return induced_subgraph(g, m);
}

std::vector<std::string> edge_labels_of(const Multigraph& g, Mask m) {
  std::vector<std::string> out;
  for_each_bit(m, [&](int i) { out.push_back(g.edges[static_cast<std::size_t>(i)].label); });
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

std::vector<int> vertex_degrees(const Multigraph& g, Mask m) {
  std::vector<int> deg(static_cast<std::size_t>(g.vertex_count()));
  for_each_bit(m, [&](int i) {
    const auto& e = g.edges[static_cast<std::size_t>(i)];
    // a loop has u == v and so contributes 2 to its vertex
    deg[static_cast<std::size_t>(e.u)] += 1;
    deg[static_cast<std::size_t>(e.v)] += 1;
  });
  return deg;
}

bool is_connected(const Multigraph& g, Mask m) {
  return g.components(m).size() == 1;
}

bool cycle_order_less(const Multigraph& g, Mask a, Mask b) {
  int pa = popcount(a), pb = popcount(b);
  if (pa != pb) return pa < pb;
  return edge_labels_of(g, a) < edge_labels_of(g, b);
}

} // namespace

Cycle make_cycle(const Multigraph& g, Mask edge_mask) {
  if (edge_mask == 0) throw InputError("make_cycle: empty edge set");
  std::vector<int> deg = vertex_degrees(g, edge_mask);
  for (int v : g.incident_vertices(edge_mask))
    if (deg[static_cast<std::size_t>(v)] != 2)
      throw InputError("make_cycle: vertex " + g.vertices[static_cast<std::size_t>(v)] +
                       " has degree " + std::to_string(deg[static_cast<std::size_t>(v)]));
  if (!is_connected(g, edge_mask)) throw InputError("make_cycle: edge set not connected");

  Cycle c;
  c.edges = edge_mask;
  std::vector<int> members = bits_of(edge_mask);
  if (members.size() == 1 && g.edges[static_cast<std::size_t>(members[0])].is_loop()) {
    c.traversal_vertices = {g.edges[static_cast<std::size_t>(members[0])].u};
    c.traversal_edges = {members[0]};
    return c;
  }
  // start at the least vertex label, first step along the lesser edge label
  std::vector<int> verts = g.incident_vertices(edge_mask);
  int start = verts[0];
  for (int v : verts)
    if (g.vertices[static_cast<std::size_t>(v)] < g.vertices[static_cast<std::size_t>(start)]) start = v;
  auto incident = [&](int v) {
    std::vector<int> out;
    for (int i : members) {
      const auto& e = g.edges[static_cast<std::size_t>(i)];
      if (e.u == v || e.v == v) out.push_back(i);
    }
    return out;
  };
  std::vector<int> first_two = incident(start);
  int first = first_two[0];
  for (int i : first_two)
    if (g.edges[static_cast<std::size_t>(i)].label < g.edges[static_cast<std::size_t>(first)].label) first = i;
  int here = start, via = first;
  do {
    c.traversal_vertices.push_back(here);
    c.traversal_edges.push_back(via);
    const auto& e = g.edges[static_cast<std::size_t>(via)];
    here = (e.u == here) ? e.v : e.u;
    if (here == start) break;
    for (int i : incident(here))
      if (i != via) {
        via = i;
        break;
      }
  } while (true);
  return c;
}

std::vector<Cycle> enumerate_cycles(const Multigraph& g, const Limits& lim) {
  g.validate();
  std::vector<Mask> found;
  auto push = [&](Mask m) {
    found.push_back(m);
    if (found.size() > lim.cycle_budget) throw BudgetError("enumerate_cycles: cycle budget exceeded");
  };
  // loops are 1-cycles and occur in no larger cycle
  for (int i = 0; i < g.edge_count(); ++i)
    if (g.edges[static_cast<std::size_t>(i)].is_loop()) push(bit(i));
  // each larger cycle is found once via its least edge index
  std::vector<std::vector<std::pair<int, int>>> adj(static_cast<std::size_t>(g.vertex_count()));
  for (int i = 0; i < g.edge_count(); ++i) {
    const auto& e = g.edges[static_cast<std::size_t>(i)];
    if (e.is_loop()) continue;
    adj[static_cast<std::size_t>(e.u)].push_back({i, e.v});
    adj[static_cast<std::size_t>(e.v)].push_back({i, e.u});
  }
  std::vector<bool> visited(static_cast<std::size_t>(g.vertex_count()));
  for (int base = 0; base < g.edge_count(); ++base) {
    const auto& e = g.edges[static_cast<std::size_t>(base)];
    if (e.is_loop()) continue;
    int target = e.u;
    std::fill(visited.begin(), visited.end(), false);
    visited[static_cast<std::size_t>(e.v)] = true;
    // simple paths from e.v back to e.u over edges with index > base
    auto dfs = [&](auto&& self, int w, Mask path) -> void {
      for (auto [idx, x] : adj[static_cast<std::size_t>(w)]) {
        if (idx <= base || has(path, idx)) continue;
        if (x == target) {
          push(path | bit(idx) | bit(base));
          continue;
        }
        if (visited[static_cast<std::size_t>(x)]) continue;
        visited[static_cast<std::size_t>(x)] = true;
        self(self, x, path | bit(idx));
        visited[static_cast<std::size_t>(x)] = false;
      }
    };
    dfs(dfs, e.v, 0);
  }
  std::sort(found.begin(), found.end(),
            [&](Mask a, Mask b) { return cycle_order_less(g, a, b); });
  std::vector<Cycle> out;
  out.reserve(found.size());
  for (Mask m : found) out.push_back(make_cycle(g, m));
  return out;
}

namespace {

// Union of two distinct edge-sharing cycles is a theta iff it is connected,
// has exactly two degree-3 vertices, all others degree 2, and no loops.
bool union_is_theta(const Multigraph& g, Mask m) {
  bool loop = false;
  for_each_bit(m, [&](int i) { loop |= g.edges[static_cast<std::size_t>(i)].is_loop(); });
  if (loop) return false;
  std::vector<int> deg = vertex_degrees(g, m);
  int threes = 0;
  for (int v : g.incident_vertices(m)) {
    int d = deg[static_cast<std::size_t>(v)];
    if (d == 3)
      ++threes;
    else if (d != 2)
      return false;
  }
  return threes == 2 && is_connected(g, m);
}

} // namespace

std::vector<Bicycle> enumerate_bicycles(const Multigraph& g, const Limits& lim) {
  std::vector<Cycle> cycles = enumerate_cycles(g, lim);
  std::uint64_t pairs = static_cast<std::uint64_t>(cycles.size()) * cycles.size();
  if (pairs > lim.search_states) throw BudgetError("enumerate_bicycles: too many cycle pairs");

  std::vector<Mask> vertex_masks; // incident vertices per cycle, as vertex bitmask
  vertex_masks.reserve(cycles.size());
  for (const Cycle& c : cycles) {
    Mask vm = 0;
    for (int v : g.incident_vertices(c.edges)) vm |= bit(v);
    vertex_masks.push_back(vm);
  }

  std::map<Mask, Bicycle> found;
  auto record = [&](Mask m, BicycleKind kind, const Cycle& a, const Cycle& b) {
    if (found.count(m)) return;
    Bicycle bc;
    bc.edges = m;
    bc.kind = kind;
    bc.first = a;
    bc.second = b;
    found[m] = std::move(bc);
    if (found.size() > lim.cycle_budget) throw BudgetError("enumerate_bicycles: budget exceeded");
  };

  std::vector<std::vector<std::pair<int, int>>> adj(static_cast<std::size_t>(g.vertex_count()));
  for (int i = 0; i < g.edge_count(); ++i) {
    const auto& e = g.edges[static_cast<std::size_t>(i)];
    if (e.is_loop()) continue;
    adj[static_cast<std::size_t>(e.u)].push_back({i, e.v});
    adj[static_cast<std::size_t>(e.v)].push_back({i, e.u});
  }

  for (std::size_t i = 0; i < cycles.size(); ++i) {
    for (std::size_t j = i + 1; j < cycles.size(); ++j) {
      Mask shared_edges = cycles[i].edges & cycles[j].edges;
      Mask shared_verts = vertex_masks[i] & vertex_masks[j];
      if (shared_edges) {
        Mask u = cycles[i].edges | cycles[j].edges;
        if (union_is_theta(g, u)) record(u, BicycleKind::Theta, cycles[i], cycles[j]);
        continue;
      }
      if (shared_verts) {
        if (popcount(shared_verts) == 1)
          record(cycles[i].edges | cycles[j].edges, BicycleKind::TightHandcuff, cycles[i], cycles[j]);
        continue;
      }
      // vertex-disjoint: every connecting simple path avoiding both cycles
      Mask forbidden = vertex_masks[i] | vertex_masks[j];
      std::vector<bool> visited(static_cast<std::size_t>(g.vertex_count()));
      auto dfs = [&](auto&& self, int w, Mask path) -> void {
        for (auto [idx, x] : adj[static_cast<std::size_t>(w)]) {
          if (has(path, idx)) continue;
          if (has(vertex_masks[j], x)) {
            record(cycles[i].edges | cycles[j].edges | path | bit(idx), BicycleKind::LooseHandcuff,
                   cycles[i], cycles[j]);
            continue;
          }
          if (has(forbidden, x) || visited[static_cast<std::size_t>(x)]) continue;
          visited[static_cast<std::size_t>(x)] = true;
          self(self, x, path | bit(idx));
          visited[static_cast<std::size_t>(x)] = false;
        }
      };
      for (int a : bits_of(vertex_masks[i])) dfs(dfs, a, 0);
    }
  }

  std::vector<Bicycle> out;
  out.reserve(found.size());
  for (auto& [m, b] : found) out.push_back(std::move(b));
  std::sort(out.begin(), out.end(), [&](const Bicycle& a, const Bicycle& b) {
    return cycle_order_less(g, a.edges, b.edges);
  });
  return out;
}

} // namespace wb
