#include "doctest.h"

#include <random>
#include <set>

#include "wb/error.hpp"
#include "wb/multigraph.hpp"

using namespace wb;

namespace {

Multigraph two_triangles() {
  Multigraph g;
  for (const char* v : {"a", "b", "c", "x", "y", "z"}) g.add_vertex(v);
  g.add_edge("ab", 0, 1);
  g.add_edge("bc", 1, 2);
  g.add_edge("ca", 2, 0);
  g.add_edge("xy", 3, 4);
  g.add_edge("yz", 4, 5);
  g.add_edge("zx", 5, 3);
  return g;
}

Multigraph k4() {
  Multigraph g;
  for (const char* v : {"a", "b", "c", "d"}) g.add_vertex(v);
  int e = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) g.add_edge("e" + std::to_string(e++), i, j);
  return g;
}

// Independent oracle: a nonempty edge set is a cycle iff it is connected and
// every incident vertex has degree exactly two. Checks every subset.
bool oracle_is_cycle(const Multigraph& g, Mask m) {
  if (m == 0) return false;
  std::vector<int> deg(static_cast<std::size_t>(g.vertex_count()));
  for_each_bit(m, [&](int e) {
    deg[static_cast<std::size_t>(g.edges[static_cast<std::size_t>(e)].u)]++;
    deg[static_cast<std::size_t>(g.edges[static_cast<std::size_t>(e)].v)]++;
  });
  for (int v : g.incident_vertices(m))
    if (deg[static_cast<std::size_t>(v)] != 2) return false;
  return g.components(m).size() == 1;
}

std::set<Mask> oracle_cycles(const Multigraph& g) {
  std::set<Mask> out;
  for (Mask m = 1; m <= g.full_edge_mask(); ++m)
    if (oracle_is_cycle(g, m)) out.insert(m);
  return out;
}

int cycles_inside(const Multigraph& g, Mask m) {
  int count = 0;
  for_each_submask(m, [&](Mask s) {
    if (oracle_is_cycle(g, s)) ++count;
  });
  return count;
}

Multigraph random_graph(std::mt19937_64& rng, int max_v, int max_e) {
  Multigraph g;
  std::uniform_int_distribution<int> nv(1, max_v);
  int n = nv(rng);
  for (int i = 0; i < n; ++i) g.add_vertex("w" + std::to_string(i));
  std::uniform_int_distribution<int> ne(0, max_e);
  std::uniform_int_distribution<int> pick(0, n - 1);
  std::uniform_int_distribution<int> coin(0, 9);
  int m = ne(rng);
  for (int i = 0; i < m; ++i) {
    int u = pick(rng);
    int v = coin(rng) < 3 ? u : pick(rng);
    g.add_edge("f" + std::to_string(i), u, v);
  }
  return g;
}

} // namespace

TEST_CASE("induced subgraphs keep only incident vertices") {
  Multigraph g = two_triangles();
  auto one = induced_subgraph(g, std::vector<std::string>{"ab", "bc", "ca"});
  CHECK(one.graph.vertex_count() == 3);
  CHECK(one.component_count == 1);

  auto none = induced_subgraph(g, Mask{0});
  CHECK(none.graph.vertex_count() == 0);
  CHECK(none.component_count == 0);

  Multigraph loops;
  loops.add_vertex("v");
  loops.add_vertex("w");
  loops.add_edge("q", 0, 0);
  auto just_loop = induced_subgraph(loops, std::vector<std::string>{"q"});
  CHECK(just_loop.graph.vertex_count() == 1);
  CHECK(just_loop.graph.vertices[0] == "v");
  CHECK(just_loop.component_count == 1);

  CHECK_THROWS_AS(induced_subgraph(g, std::vector<std::string>{"nope"}), InputError);
}

TEST_CASE("cycle enumeration on the named examples") {
  Multigraph parallel;
  parallel.add_vertex("u");
  parallel.add_vertex("v");
  parallel.add_edge("e1", 0, 1);
  parallel.add_edge("e2", 0, 1);
  auto cycles = enumerate_cycles(parallel);
  REQUIRE(cycles.size() == 1);
  CHECK(cycles[0].size() == 2);

  Multigraph loop;
  loop.add_vertex("u");
  loop.add_edge("q", 0, 0);
  auto loop_cycles = enumerate_cycles(loop);
  REQUIRE(loop_cycles.size() == 1);
  CHECK(loop_cycles[0].size() == 1);

  CHECK(enumerate_cycles(k4()).size() == 7); // 4 triangles, 3 four-cycles
}

TEST_CASE("cycle enumeration matches the subset oracle on random graphs") {
  std::mt19937_64 rng(20240811);
  for (int trial = 0; trial < 60; ++trial) {
    Multigraph g = random_graph(rng, 5, 8);
    std::set<Mask> expected = oracle_cycles(g);
    std::set<Mask> got;
    for (const Cycle& c : enumerate_cycles(g)) {
      CHECK(oracle_is_cycle(g, c.edges));
      got.insert(c.edges);
    }
    CHECK(got == expected);
  }
}

TEST_CASE("canonical traversals walk the cycle") {
  Multigraph g = k4();
  for (const Cycle& c : enumerate_cycles(g)) {
    REQUIRE(c.traversal_edges.size() == static_cast<std::size_t>(popcount(c.edges)));
    int len = c.size();
    for (int i = 0; i < len; ++i) {
      const auto& e = g.edges[static_cast<std::size_t>(c.traversal_edges[static_cast<std::size_t>(i)])];
      int from = c.traversal_vertices[static_cast<std::size_t>(i)];
      int to = c.traversal_vertices[static_cast<std::size_t>((i + 1) % len)];
      CHECK(((e.u == from && e.v == to) || (e.v == from && e.u == to)));
    }
  }
}

TEST_CASE("bicycles on the named examples") {
  Multigraph two_loops;
  two_loops.add_vertex("u");
  two_loops.add_edge("q1", 0, 0);
  two_loops.add_edge("q2", 0, 0);
  auto tight = enumerate_bicycles(two_loops);
  REQUIRE(tight.size() == 1);
  CHECK(tight[0].kind == BicycleKind::TightHandcuff);
  CHECK(popcount(tight[0].edges) == 2);

  Multigraph triple;
  triple.add_vertex("u");
  triple.add_vertex("v");
  triple.add_edge("e1", 0, 1);
  triple.add_edge("e2", 0, 1);
  triple.add_edge("e3", 0, 1);
  CHECK(enumerate_cycles(triple).size() == 3);
  auto theta = enumerate_bicycles(triple);
  REQUIRE(theta.size() == 1);
  CHECK(theta[0].kind == BicycleKind::Theta);
  CHECK(theta[0].edges == 0b111);

  Multigraph dumbbell;
  dumbbell.add_vertex("u");
  dumbbell.add_vertex("v");
  dumbbell.add_edge("q1", 0, 0);
  dumbbell.add_edge("q2", 1, 1);
  dumbbell.add_edge("e", 0, 1);
  auto loose = enumerate_bicycles(dumbbell);
  REQUIRE(loose.size() == 1);
  CHECK(loose[0].kind == BicycleKind::LooseHandcuff);
  CHECK(loose[0].edges == 0b111);
}

TEST_CASE("bicycles are minimal and contain the right number of cycles") {
  std::mt19937_64 rng(777);
  for (int trial = 0; trial < 40; ++trial) {
    Multigraph g = random_graph(rng, 5, 8);
    for (const Bicycle& b : enumerate_bicycles(g)) {
      CHECK(g.components(b.edges).size() == 1);
      int inner = cycles_inside(g, b.edges);
      if (b.kind == BicycleKind::Theta)
        CHECK(inner == 3);
      else
        CHECK(inner == 2);
      // removing any edge loses connectivity or the two-cycle property
      for_each_bit(b.edges, [&](int e) {
        Mask rest = b.edges & ~bit(e);
        bool still = g.components(rest).size() == 1 && cycles_inside(g, rest) >= 2;
        CHECK(!still);
      });
    }
  }
}

TEST_CASE("maximal forests are acyclic and spanning") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 40; ++trial) {
    Multigraph g = random_graph(rng, 6, 9);
    Mask f = g.maximal_forest();
    CHECK(cycles_inside(g, f) == 0);
    // same component structure as the whole graph, restricted to non-loops
    Mask all = g.full_edge_mask();
    auto comps_all = g.components(all);
    for (const auto& comp : comps_all) {
      // within each component, the forest connects every pair of vertices
      // that the component connects
      std::set<int> verts(comp.vertices.begin(), comp.vertices.end());
      bool found = false;
      for (const auto& fc : g.components(f & comp.edges))
        if (std::set<int>(fc.vertices.begin(), fc.vertices.end()) == verts) found = true;
      bool only_loops = true;
      for_each_bit(comp.edges, [&](int e) {
        if (!g.edges[static_cast<std::size_t>(e)].is_loop()) only_loops = false;
      });
      if (verts.size() > 1 && !only_loops) CHECK(found);
    }
  }
}
