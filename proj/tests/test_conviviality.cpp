#include "doctest.h"

#include <map>
#include <random>
#include <set>

#include "support.hpp"
#include "wb/conviviality.hpp"
#include "wb/gadgets.hpp"
#include "wb/gain.hpp"

using namespace wb;
using namespace wbtest;

TEST_CASE("subgroup enumeration") {
  FiniteGroup z4 = FiniteGroup::cyclic(4);
  auto subs = subgroups_of(z4);
  REQUIRE(subs.size() == 3);
  CHECK(subs[0] == std::vector<int>{0});
  CHECK(subs[1] == std::vector<int>{0, 1, 2, 3});
  CHECK(subs[2] == std::vector<int>{0, 2});

  FiniteGroup s3 = FiniteGroup::symmetric(3);
  CHECK(subgroups_of(s3).size() == 6); // trivial, three order-2, one order-3, full
}

TEST_CASE("the desk case: Z4 over Z2") {
  ConvivialityGraph g =
      elementary_conviviality_graph(FiniteGroup::cyclic(4), FiniteGroup::cyclic(2));
  REQUIRE(g.vertices.size() == 2);
  CHECK(g.adjacent(0, 0));
  CHECK(g.adjacent(1, 1));
  CHECK(g.adjacent(0, 1));
  std::set<int> orders;
  for (const auto& v : g.vertices) orders.insert(v.group.order());
  CHECK(orders == std::set<int>{2, 4});

  ConvivialityGraph q = quotient_conviviality_graph(g);
  CHECK(q.vertices.size() == 1);
  CHECK(q.adjacent(0, 0));
  REQUIRE(q.cells.size() == 1);
  CHECK(q.cells[0].size() == 2);
}

TEST_CASE("ambient equal to the subgroup gives one self-adjacent vertex") {
  FiniteGroup z6 = FiniteGroup::cyclic(6);
  ConvivialityGraph g = elementary_conviviality_graph(z6, z6);
  REQUIRE(g.vertices.size() == 1);
  CHECK(g.adjacent(0, 0));
}

TEST_CASE("trivial F yields a complete graph on subgroup classes") {
  FiniteGroup d4 = FiniteGroup::dihedral(4);
  FiniteGroup triv = FiniteGroup::cyclic(1);
  ConvivialityGraph g = elementary_conviviality_graph(d4, triv);
  CHECK(!g.vertices.empty());
  for (std::size_t i = 0; i < g.vertices.size(); ++i)
    for (std::size_t j = 0; j < g.vertices.size(); ++j) CHECK(g.adjacent(i, j));
  ConvivialityGraph q = quotient_conviviality_graph(g);
  CHECK(q.vertices.size() == 1);
}

TEST_CASE("adjacency is symmetric with a true diagonal") {
  ConvivialityGraph g =
      elementary_conviviality_graph(FiniteGroup::dihedral(4), FiniteGroup::cyclic(2));
  for (std::size_t i = 0; i < g.vertices.size(); ++i) {
    CHECK(g.adjacent(i, i));
    for (std::size_t j = 0; j < g.vertices.size(); ++j) CHECK(g.adjacent(i, j) == g.adjacent(j, i));
  }
}

TEST_CASE("conviviality does not depend on the class representative") {
  FiniteGroup ambient = FiniteGroup::dihedral(4);
  FiniteGroup f = FiniteGroup::cyclic(2);
  ConvivialityGraph g = elementary_conviviality_graph(ambient, f);
  for (std::size_t i = 0; i < g.vertices.size(); ++i) {
    const auto& vi = g.vertices[i];
    auto autos = enumerate_monomorphisms(vi.group, vi.group);
    for (const auto& theta : autos) {
      std::vector<int> moved(vi.psi.size());
      for (std::size_t k = 0; k < vi.psi.size(); ++k)
        moved[k] = theta.map[static_cast<std::size_t>(vi.psi[k])];
      // transporting psi by an automorphism leaves the realizable maps alone
      std::set<std::vector<int>> a, b;
      for (const auto& emb : enumerate_monomorphisms(vi.group, ambient)) {
        std::vector<int> ca(vi.psi.size()), cb(vi.psi.size());
        for (std::size_t k = 0; k < vi.psi.size(); ++k) {
          ca[k] = emb.map[static_cast<std::size_t>(vi.psi[k])];
          cb[k] = emb.map[static_cast<std::size_t>(moved[k])];
        }
        a.insert(ca);
        b.insert(cb);
      }
      CHECK(a == b);
    }
  }
}

// ---------------------------------------------------------------------------
// The executable direction of the diagonal conviviality statement: embed a
// convivial pair in a common ambient group, gain the two subgroup-pair
// gadgets with fresh off-span values on K1/K2, amalgamate over the delta
// base, and compare the amalgam's frame matroid with the rank-2-base
// dependence split of the two sides. Ground sets are beyond
// materialization, so everything runs through rank oracles; the star
// layer plus the two base loops is exactly what the amalgam hypotheses
// need.

namespace {

Gaining lambda_star_with_base_loops(const FiniteGroup& ambient, const std::vector<int>& g1,
                                    const std::vector<int>& g2, int m_elem, int q_value) {
  LambdaGadget lg = build_lambda_gadget(ambient, g1, g2, m_elem, {}, {}, true);
  Gaining g = lg.gaining;
  int d1 = g.graph.vertex_index("delta1");
  int d2 = g.graph.vertex_index("delta2");
  g.graph.add_edge("Q8", d1, d1);
  g.gain.push_back(q_value);
  g.graph.add_edge("Q9", d2, d2);
  g.gain.push_back(q_value);
  return g;
}

} // namespace

TEST_CASE("gadget amalgams of convivial pairs match the dependence split") {
  FiniteGroup z2 = FiniteGroup::cyclic(2);
  FiniteGroup ambient =
      FiniteGroup::product(FiniteGroup::product(z2, z2), FiniteGroup::product(z2, z2));
  REQUIRE(ambient.order() == 16);
  std::vector<int> f_elems = subgroup_generate(ambient, {8});
  std::vector<int> h2_elems = subgroup_generate(ambient, {8, 4});
  int m1 = 2, m2 = 1; // outside <H1,H2> and <H1,H2,m1>

  Gaining a = lambda_star_with_base_loops(ambient, f_elems, f_elems, m1, 8);
  Gaining b0 = lambda_star_with_base_loops(ambient, f_elems, h2_elems, m2, 8);

  std::vector<std::string> base_labels;
  for (int e : f_elems) base_labels.push_back("C_" + ambient.name(e));
  base_labels.push_back("Q8");
  base_labels.push_back("Q9");
  std::set<std::string> keep(base_labels.begin(), base_labels.end());

  OracleAmalgam oa(a, tick_rename(b0, keep, "delta1", "delta2"), base_labels, "delta1", "delta2");
  REQUIRE(frame_rank(oa.side1, oa.base1) == 2);
  REQUIRE(frame_rank(oa.side2, oa.base2) == 2);

  int n = oa.edge_count();
  REQUIRE(n <= 64);

  std::mt19937_64 rng(909090);
  std::vector<Mask> samples;
  for (int k = 0; k <= 10; ++k)
    for (int trial = 0; trial < 50; ++trial) {
      Mask x = 0;
      for (int pick = 0; pick < k; ++pick) x |= bit(static_cast<int>(rng() % n));
      samples.push_back(x);
    }
  for (int trial = 0; trial < 40; ++trial) {
    Mask x = static_cast<Mask>(rng());
    if (n < 64) x &= (Mask{1} << n) - 1;
    samples.push_back(x);
  }
  // cross cycles through the A rows of both sides: balanced exactly when the
  // element labels agree, which is where the shared-link condition matters
  std::string id_name = ambient.name(0), gen_name = ambient.name(8);
  for (const std::string& g1 : {id_name, gen_name})
    for (const std::string& g2 : {id_name, gen_name}) {
      Mask x = 0;
      std::vector<std::string> route = {"T4",  "T1",  "A_" + g1,       "T2",  "T5",
                                        "T4p", "T1p", "A_" + g2 + "p", "T2p", "T5p"};
      for (const std::string& l : route) x |= bit(oa.edge(l));
      samples.push_back(x);
      samples.push_back(x | bit(oa.edge("C_" + g1)));
      samples.push_back(x | bit(oa.edge("Q8")) | bit(oa.edge("Q9")));
    }
  // K routes across the two sides stay independent: the fresh gains differ
  {
    Mask x = 0;
    std::vector<std::string> route = {"T4",  "K1",  "A_" + id_name,       "T2",  "T5",
                                      "T4p", "K1p", "A_" + id_name + "p", "T2p", "T5p"};
    for (const std::string& l : route) x |= bit(oa.edge(l));
    samples.push_back(x);
  }
  Mask base_in_joined = 0;
  for (const auto& l : base_labels) base_in_joined |= bit(oa.edge(l));
  samples.push_back(base_in_joined);

  for (Mask x : samples) CHECK(oa.frame_dependent(x) == oa.split_dependent(x));
}
