#include "wb/gain.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "wb/error.hpp"

namespace wb {

void Gaining::validate() const {
  graph.validate();
  if (gain.size() != static_cast<std::size_t>(graph.edge_count()))
    throw InputError("gaining: one gain per edge required");
  for (int v : gain)
    if (v < 0 || v >= group.order()) throw InputError("gaining: element index out of range");
}

int Gaining::gain_of(int e, int from, int to) const {
  const auto& edge = graph.edges[static_cast<std::size_t>(e)];
  if (edge.is_loop()) {
    if (from != edge.u || to != edge.u) throw InputError("gain_of: loop read at a foreign vertex");
    return gain[static_cast<std::size_t>(e)];
  }
  if (from == edge.u && to == edge.v) return gain[static_cast<std::size_t>(e)];
  if (from == edge.v && to == edge.u) return group.inv(gain[static_cast<std::size_t>(e)]);
  throw InputError("gain_of: edge " + edge.label + " not incident as requested");
}

int Gaining::cycle_gain(const Cycle& c) const {
  int acc = group.identity();
  int len = c.size();
  for (int i = 0; i < len; ++i) {
    int from = c.traversal_vertices[static_cast<std::size_t>(i)];
    int to = c.traversal_vertices[static_cast<std::size_t>((i + 1) % len)];
    acc = group.mul(acc, gain_of(c.traversal_edges[static_cast<std::size_t>(i)], from, to));
  }
  return acc;
}

int walk_gain(const Gaining& g, const std::vector<int>& vertices, const std::vector<int>& edges) {
  if (vertices.size() != edges.size() + 1) throw InputError("walk_gain: malformed walk");
  int acc = g.group.identity();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    int e = edges[i];
    if (e < 0 || e >= g.graph.edge_count()) throw InputError("walk_gain: unknown edge");
    const auto& edge = g.graph.edges[static_cast<std::size_t>(e)];
    int from = vertices[i], to = vertices[i + 1];
    bool ok = edge.is_loop() ? (from == edge.u && to == edge.u)
                             : ((from == edge.u && to == edge.v) || (from == edge.v && to == edge.u));
    if (!ok) throw InputError("walk_gain: step " + std::to_string(i) + " is not incidence-valid");
    acc = g.group.mul(acc, g.gain_of(e, from, to));
  }
  return acc;
}

bool BiasedGraph::is_balanced(Mask cycle_edges) const {
  for (std::size_t i = 0; i < cycles.size(); ++i)
    if (cycles[i].edges == cycle_edges) return balanced[i] != 0;
  throw InputError("is_balanced: not a cycle of this graph");
}

std::vector<Mask> BiasedGraph::balanced_masks() const {
  std::vector<Mask> out;
  for (std::size_t i = 0; i < cycles.size(); ++i)
    if (balanced[i]) out.push_back(cycles[i].edges);
  return out;
}

std::optional<Mask> linear_class_violation(const BiasedGraph& b) {
  // A theta with exactly two balanced cycles always has two balanced cycles
  // sharing a path, so scanning balanced pairs is a complete check.
  std::map<Mask, std::size_t> index;
  for (std::size_t i = 0; i < b.cycles.size(); ++i) index[b.cycles[i].edges] = i;
  std::vector<std::size_t> bal;
  for (std::size_t i = 0; i < b.cycles.size(); ++i)
    if (b.balanced[i]) bal.push_back(i);

  auto degrees_ok = [&](Mask m) {
    // theta: connected, exactly two degree-3 vertices, rest degree 2, no loops
    std::vector<int> deg(static_cast<std::size_t>(b.graph.vertex_count()));
    bool loop = false;
    for_each_bit(m, [&](int e) {
      const auto& ed = b.graph.edges[static_cast<std::size_t>(e)];
      loop |= ed.is_loop();
      deg[static_cast<std::size_t>(ed.u)] += 1;
      deg[static_cast<std::size_t>(ed.v)] += 1;
    });
    if (loop) return false;
    int threes = 0;
    for (int v : b.graph.incident_vertices(m)) {
      if (deg[static_cast<std::size_t>(v)] == 3)
        ++threes;
      else if (deg[static_cast<std::size_t>(v)] != 2)
        return false;
    }
    return threes == 2 && b.graph.components(m).size() == 1;
  };

  for (std::size_t a = 0; a < bal.size(); ++a)
    for (std::size_t c = a + 1; c < bal.size(); ++c) {
      Mask ma = b.cycles[bal[a]].edges, mc = b.cycles[bal[c]].edges;
      if (!(ma & mc)) continue;
      Mask uni = ma | mc;
      if (!degrees_ok(uni)) continue;
      Mask third = ma ^ mc;
      auto it = index.find(third);
      if (it == index.end()) continue;
      if (!b.balanced[it->second]) return uni;
    }
  return std::nullopt;
}

BiasedGraph balanced_cycles(const Gaining& g, const Limits& lim) {
  g.validate();
  BiasedGraph b;
  b.graph = g.graph;
  b.cycles = enumerate_cycles(g.graph, lim);
  b.balanced.resize(b.cycles.size());
  for (std::size_t i = 0; i < b.cycles.size(); ++i)
    b.balanced[i] = g.cycle_gain(b.cycles[i]) == g.group.identity() ? 1 : 0;
  if (auto theta = linear_class_violation(b)) {
    std::vector<std::string> labels;
    for (const auto& e : b.graph.edges) labels.push_back(e.label);
    throw InputError("balanced_cycles: linear class violated on theta " +
                     mask_to_string(*theta, labels));
  }
  return b;
}

BiasedGraph make_biased(const Multigraph& graph, const std::vector<Mask>& balanced,
                        const Limits& lim) {
  BiasedGraph b;
  b.graph = graph;
  b.cycles = enumerate_cycles(graph, lim);
  std::set<Mask> want(balanced.begin(), balanced.end());
  b.balanced.resize(b.cycles.size());
  std::size_t hit = 0;
  for (std::size_t i = 0; i < b.cycles.size(); ++i) {
    if (want.count(b.cycles[i].edges)) {
      b.balanced[i] = 1;
      ++hit;
    }
  }
  if (hit != want.size()) throw InputError("make_biased: a balanced set is not a cycle");
  if (auto theta = linear_class_violation(b))
    throw InputError("make_biased: linear class violated");
  return b;
}

Gaining switch_gains(const Gaining& g, const std::vector<int>& rho) {
  if (rho.size() != static_cast<std::size_t>(g.graph.vertex_count()))
    throw InputError("switch_gains: rho must be total on vertices");
  for (int v : rho)
    if (v < 0 || v >= g.group.order()) throw InputError("switch_gains: element out of range");
  Gaining out = g;
  for (int e = 0; e < g.graph.edge_count(); ++e) {
    const auto& edge = g.graph.edges[static_cast<std::size_t>(e)];
    if (edge.is_loop()) continue;
    out.gain[static_cast<std::size_t>(e)] =
        g.group.mul(g.group.mul(g.group.inv(rho[static_cast<std::size_t>(edge.u)]),
                                g.gain[static_cast<std::size_t>(e)]),
                    rho[static_cast<std::size_t>(edge.v)]);
  }
  return out;
}

namespace {

// Potentials over a spanning forest: rho(root) = Id and
// rho(child) = sigma(e,parent,child)^{-1} rho(parent), so switching by rho
// sends every forest edge to the identity.
std::vector<int> forest_potentials(const Gaining& g, Mask forest) {
  std::vector<int> rho(static_cast<std::size_t>(g.graph.vertex_count()), -1);
  std::vector<std::vector<std::pair<int, int>>> adj(static_cast<std::size_t>(g.graph.vertex_count()));
  for_each_bit(forest, [&](int e) {
    const auto& edge = g.graph.edges[static_cast<std::size_t>(e)];
    adj[static_cast<std::size_t>(edge.u)].push_back({e, edge.v});
    adj[static_cast<std::size_t>(edge.v)].push_back({e, edge.u});
  });
  for (int root = 0; root < g.graph.vertex_count(); ++root) {
    if (rho[static_cast<std::size_t>(root)] >= 0) continue;
    rho[static_cast<std::size_t>(root)] = g.group.identity();
    std::deque<int> queue{root};
    while (!queue.empty()) {
      int p = queue.front();
      queue.pop_front();
      for (auto [e, c] : adj[static_cast<std::size_t>(p)]) {
        if (rho[static_cast<std::size_t>(c)] >= 0) continue;
        rho[static_cast<std::size_t>(c)] =
            g.group.mul(g.group.inv(g.gain_of(e, p, c)), rho[static_cast<std::size_t>(p)]);
        queue.push_back(c);
      }
    }
  }
  return rho;
}

} // namespace

Gaining switch_normalize_forest(const Gaining& g) {
  g.validate();
  return switch_gains(g, forest_potentials(g, g.graph.maximal_forest()));
}

bool all_balanced(const Gaining& g, Mask edge_subset) {
  // Balance per component: after forest switching, every remaining edge
  // (and every loop) must carry the identity.
  std::vector<std::vector<std::pair<int, int>>> adj(static_cast<std::size_t>(g.graph.vertex_count()));
  std::vector<int> loops;
  for_each_bit(edge_subset, [&](int e) {
    const auto& edge = g.graph.edges[static_cast<std::size_t>(e)];
    if (edge.is_loop())
      loops.push_back(e);
    else {
      adj[static_cast<std::size_t>(edge.u)].push_back({e, edge.v});
      adj[static_cast<std::size_t>(edge.v)].push_back({e, edge.u});
    }
  });
  for (int e : loops)
    if (g.gain[static_cast<std::size_t>(e)] != g.group.identity()) return false;

  std::vector<int> pot(static_cast<std::size_t>(g.graph.vertex_count()), -1);
  for (int v : g.graph.incident_vertices(edge_subset)) {
    if (pot[static_cast<std::size_t>(v)] >= 0) continue;
    pot[static_cast<std::size_t>(v)] = g.group.identity();
    std::deque<int> queue{v};
    while (!queue.empty()) {
      int p = queue.front();
      queue.pop_front();
      for (auto [e, c] : adj[static_cast<std::size_t>(p)]) {
        int want = g.group.mul(g.group.inv(g.gain_of(e, p, c)), pot[static_cast<std::size_t>(p)]);
        if (pot[static_cast<std::size_t>(c)] < 0) {
          pot[static_cast<std::size_t>(c)] = want;
          queue.push_back(c);
        } else if (g.group.mul(g.group.mul(g.group.inv(pot[static_cast<std::size_t>(p)]),
                                           g.gain_of(e, p, c)),
                               pot[static_cast<std::size_t>(c)]) != g.group.identity()) {
          return false;
        }
      }
    }
  }
  return true;
}

int frame_rank(const Gaining& g, Mask edge_subset) {
  auto comps = g.graph.components(edge_subset);
  int vertices = static_cast<int>(g.graph.incident_vertices(edge_subset).size());
  int balanced_components = 0;
  for (const auto& c : comps)
    if (all_balanced(g, c.edges)) ++balanced_components;
  return vertices - balanced_components;
}

Matroid frame_matroid(const BiasedGraph& b, const Limits& lim) {
  int n = b.graph.edge_count();
  if (n > lim.frame_edges_max)
    throw BudgetError("frame_matroid: edge count above the materialization cap");
  if (auto theta = linear_class_violation(b))
    throw InputError("frame_matroid: linear class violated");

  std::vector<Mask> circuits;
  for (std::size_t i = 0; i < b.cycles.size(); ++i)
    if (b.balanced[i]) circuits.push_back(b.cycles[i].edges);
  for (const Bicycle& bc : enumerate_bicycles(b.graph, lim)) {
    bool has_balanced = false;
    for (std::size_t i = 0; i < b.cycles.size() && !has_balanced; ++i)
      if (b.balanced[i] && (b.cycles[i].edges & bc.edges) == b.cycles[i].edges) has_balanced = true;
    if (!has_balanced) circuits.push_back(bc.edges);
  }

  std::size_t total = std::size_t{1} << n;
  std::vector<std::uint8_t> dep(total, 0);
  for (Mask c : circuits) dep[static_cast<std::size_t>(c)] = 1;
  for (int i = 0; i < n; ++i)
    for (Mask x = 0; x < total; ++x)
      if (!has(x, i) && dep[static_cast<std::size_t>(x)]) dep[static_cast<std::size_t>(x | bit(i))] = 1;

  std::vector<std::string> labels;
  for (const auto& e : b.graph.edges) labels.push_back(e.label);
  Hypergraph h;
  h.ground = std::move(labels);
  h.member.resize(total);
  for (Mask x = 0; x < total; ++x) h.member[static_cast<std::size_t>(x)] = dep[static_cast<std::size_t>(x)] ? 0 : 1;

  auto res = validate_matroid(h, lim);
  if (auto* v = std::get_if<AxiomViolation>(&res))
    throw InputError("frame_matroid: circuit family fails the axioms: " + v->message);
  return std::get<Matroid>(std::move(res));
}

Matroid frame_matroid(const Gaining& g, const Limits& lim) {
  return frame_matroid(balanced_cycles(g, lim), lim);
}

Gaining gain_graph_amalgam(const Gaining& a, const Gaining& b,
                           const std::string& u, const std::string& v) {
  a.validate();
  b.validate();
  if (!(a.group == b.group)) throw InputError("gain_graph_amalgam: groups differ");
  int au = a.graph.vertex_index(u), av = a.graph.vertex_index(v);
  int bu = b.graph.vertex_index(u), bv = b.graph.vertex_index(v);
  if (au < 0 || av < 0 || bu < 0 || bv < 0 || u == v)
    throw InputError("gain_graph_amalgam: base vertices must exist in both graphs");
  for (const auto& name : a.graph.vertices)
    if (name != u && name != v && b.graph.vertex_index(name) >= 0)
      throw InputError("gain_graph_amalgam: vertex sets meet outside the base at " + name);

  // shared edges must form identical subgraphs with agreeing gains
  for (int ea = 0; ea < a.graph.edge_count(); ++ea) {
    const auto& edge_a = a.graph.edges[static_cast<std::size_t>(ea)];
    int eb = b.graph.edge_index(edge_a.label);
    if (eb < 0) continue;
    const auto& edge_b = b.graph.edges[static_cast<std::size_t>(eb)];
    const std::string& a_u = a.graph.vertices[static_cast<std::size_t>(edge_a.u)];
    const std::string& a_v = a.graph.vertices[static_cast<std::size_t>(edge_a.v)];
    const std::string& b_u = b.graph.vertices[static_cast<std::size_t>(edge_b.u)];
    const std::string& b_v = b.graph.vertices[static_cast<std::size_t>(edge_b.v)];
    bool same = (a_u == b_u && a_v == b_v) || (a_u == b_v && a_v == b_u);
    if (!same) throw InputError("gain_graph_amalgam: shared edge " + edge_a.label +
                                " joins different vertices");
    int ga = a.gain[static_cast<std::size_t>(ea)];
    int gb = edge_b.is_loop() ? b.gain[static_cast<std::size_t>(eb)]
                              : b.gain_of(eb, b.graph.vertex_index(a_u), b.graph.vertex_index(a_v));
    if (!edge_a.is_loop()) ga = a.gain_of(ea, a.graph.vertex_index(a_u), a.graph.vertex_index(a_v));
    if (ga != gb)
      throw InputError("gain_graph_amalgam: gains disagree on shared edge " + edge_a.label);
  }

  Gaining out;
  out.group = a.group;
  out.graph.vertices = a.graph.vertices;
  for (const auto& name : b.graph.vertices)
    if (out.graph.vertex_index(name) < 0) out.graph.vertices.push_back(name);
  for (int e = 0; e < a.graph.edge_count(); ++e) {
    const auto& edge = a.graph.edges[static_cast<std::size_t>(e)];
    out.graph.add_edge(edge.label, out.graph.vertex_index(a.graph.vertices[static_cast<std::size_t>(edge.u)]),
                       out.graph.vertex_index(a.graph.vertices[static_cast<std::size_t>(edge.v)]));
    out.gain.push_back(a.gain[static_cast<std::size_t>(e)]);
  }
  for (int e = 0; e < b.graph.edge_count(); ++e) {
    const auto& edge = b.graph.edges[static_cast<std::size_t>(e)];
    if (a.graph.edge_index(edge.label) >= 0) continue;
    out.graph.add_edge(edge.label, out.graph.vertex_index(b.graph.vertices[static_cast<std::size_t>(edge.u)]),
                       out.graph.vertex_index(b.graph.vertices[static_cast<std::size_t>(edge.v)]));
    out.gain.push_back(b.gain[static_cast<std::size_t>(e)]);
  }
  return out;
}

} // namespace wb
