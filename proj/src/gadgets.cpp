#include "wb/gadgets.hpp"

#include <algorithm>

#include "wb/error.hpp"

namespace wb {

namespace {

std::string violating_cycle_text(const Multigraph& g, const Cycle& c) {
  std::string out;
  for (int e : c.traversal_edges) {
    if (!out.empty()) out += ' ';
    out += g.edges[static_cast<std::size_t>(e)].label;
  }
  return out;
}

// Slot assignment for the D/Q edges, least candidates first with
// backtracking: value exclusions across parallel classes can saturate a
// small group under one-pass choices, so a dead end unwinds to the previous
// slot. Cycles are bucketed by the largest slot they touch; each bucket
// cycle excludes exactly one value for that slot (the slot edge occurs once
// in the cycle), so a slot's candidate set is computed in one bucket sweep.
std::optional<std::vector<int>> greedy_dagger(Gaining working, const std::vector<int>& slot_edges,
                                              const Limits& lim,
                                              const std::vector<std::optional<int>>& pinned = {}) {
  std::vector<Cycle> cycles = enumerate_cycles(working.graph, lim);
  std::vector<int> slot_of(static_cast<std::size_t>(working.graph.edge_count()), -1);
  for (std::size_t k = 0; k < slot_edges.size(); ++k)
    slot_of[static_cast<std::size_t>(slot_edges[k])] = static_cast<int>(k);

  std::vector<std::vector<std::size_t>> by_last_slot(slot_edges.size());
  for (std::size_t ci = 0; ci < cycles.size(); ++ci) {
    int last = -1;
    for_each_bit(cycles[ci].edges, [&](int e) { last = std::max(last, slot_of[static_cast<std::size_t>(e)]); });
    if (last >= 0) by_last_slot[static_cast<std::size_t>(last)].push_back(ci);
  }

  const FiniteGroup& grp = working.group;
  // A v^eps B = Id has the unique solution v = (A^{-1} B^{-1})^(eps)
  auto excluded_value = [&](const Cycle& c, int slot_edge) {
    int prefix = grp.identity(), suffix = grp.identity();
    bool seen = false, forward = true;
    int len = c.size();
    for (int i = 0; i < len; ++i) {
      int e = c.traversal_edges[static_cast<std::size_t>(i)];
      int from = c.traversal_vertices[static_cast<std::size_t>(i)];
      int to = c.traversal_vertices[static_cast<std::size_t>((i + 1) % len)];
      if (e == slot_edge) {
        seen = true;
        const auto& edge = working.graph.edges[static_cast<std::size_t>(e)];
        forward = edge.is_loop() || (from == edge.u && to == edge.v);
        continue;
      }
      int g = working.gain_of(e, from, to);
      if (!seen)
        prefix = grp.mul(prefix, g);
      else
        suffix = grp.mul(suffix, g);
    }
    int v = grp.mul(grp.inv(prefix), grp.inv(suffix));
    return forward ? v : grp.inv(v);
  };

  // exclusions from cycles whose gain no other slot influences are static:
  // a pinned or saturated slot fails fast instead of after a full backtrack
  {
    std::vector<std::vector<char>> static_excluded(
        slot_edges.size(), std::vector<char>(static_cast<std::size_t>(grp.order()), 0));
    std::vector<int> slot_count(cycles.size(), 0);
    for (std::size_t ci = 0; ci < cycles.size(); ++ci)
      for_each_bit(cycles[ci].edges, [&](int e) {
        if (slot_of[static_cast<std::size_t>(e)] >= 0) ++slot_count[ci];
      });
    for (std::size_t k = 0; k < slot_edges.size(); ++k)
      for (std::size_t ci : by_last_slot[k])
        if (slot_count[ci] == 1)
          static_excluded[k][static_cast<std::size_t>(excluded_value(cycles[ci], slot_edges[k]))] = 1;
    for (std::size_t k = 0; k < slot_edges.size(); ++k) {
      if (k < pinned.size() && pinned[k]) {
        if (static_excluded[k][static_cast<std::size_t>(*pinned[k])]) return std::nullopt;
      } else {
        bool any = false;
        for (int v = 0; v < grp.order() && !any; ++v)
          if (!static_excluded[k][static_cast<std::size_t>(v)]) any = true;
        if (!any) return std::nullopt;
      }
    }
  }

  std::vector<int> values(slot_edges.size(), -1);
  std::uint64_t visited = 0;
  auto dfs = [&](auto&& self, std::size_t k) -> bool {
    if (k == slot_edges.size()) return true;
    if (++visited > lim.search_states)
      throw BudgetError("dagger parameter search: state cap exceeded");
    // bucket cycles only read slots <= k, so the exclusions are stable
    // throughout the candidate loop
    std::vector<char> excluded(static_cast<std::size_t>(grp.order()), 0);
    for (std::size_t ci : by_last_slot[k])
      excluded[static_cast<std::size_t>(excluded_value(cycles[ci], slot_edges[k]))] = 1;
    int from = 0, to = grp.order() - 1;
    if (k < pinned.size() && pinned[k]) from = to = *pinned[k];
    for (int candidate = from; candidate <= to; ++candidate) {
      if (excluded[static_cast<std::size_t>(candidate)]) continue;
      working.gain[static_cast<std::size_t>(slot_edges[k])] = candidate;
      values[k] = candidate;
      if (self(self, k + 1)) return true;
    }
    values[k] = -1;
    return false;
  };
  if (!dfs(dfs, 0)) return std::nullopt;
  return values;
}

void check_dagger_cycles(const Gaining& g, const std::vector<int>& special_edges,
                         const Limits& lim, const char* who) {
  std::vector<bool> special(static_cast<std::size_t>(g.graph.edge_count()));
  for (int e : special_edges) special[static_cast<std::size_t>(e)] = true;
  for (const Cycle& c : enumerate_cycles(g.graph, lim)) {
    bool touches = false;
    for_each_bit(c.edges, [&](int e) { touches |= special[static_cast<std::size_t>(e)]; });
    if (touches && g.cycle_gain(c) == g.group.identity())
      throw InputError(std::string(who) + ": balanced cycle through a D/Q edge: " +
                       violating_cycle_text(g.graph, c));
  }
}

void require_balanced_walk(const Gaining& g, const std::vector<std::string>& vnames,
                           const std::vector<std::string>& elabels, const char* who) {
  std::vector<int> vs, es;
  for (const auto& v : vnames) vs.push_back(g.graph.vertex_index(v));
  for (const auto& e : elabels) es.push_back(g.graph.edge_index(e));
  if (walk_gain(g, vs, es) != g.group.identity())
    throw InputError(std::string(who) + ": designated transfer cycle is not balanced");
}

} // namespace

HGadget build_h_gadget(const FiniteGroup& group, const GeneratingSet& gens, int s_elem,
                       int m_elem, const std::vector<int>& d_values,
                       const std::vector<int>& q_values, int N, bool star_only,
                       const Limits& lim) {
  if (N < 1) throw InputError("build_h_gadget: N must be positive");
  int n = static_cast<int>(gens.elements.size());
  if (n < 1) throw InputError("build_h_gadget: empty generating set");

  auto fs = word_length(gens, s_elem);
  if (!fs || *fs != N)
    throw InputError("build_h_gadget: word length of s is " +
                     (fs ? std::to_string(*fs) : std::string("absent")) + ", needs exactly " +
                     std::to_string(N));
  auto fm = word_length(gens, m_elem);
  if (!fm || *fm < 2 * N + 1)
    throw InputError("build_h_gadget: word length of m is " +
                     (fm ? std::to_string(*fm) : std::string("absent")) + ", needs at least " +
                     std::to_string(2 * N + 1));
  if (!star_only) {
    if (static_cast<int>(d_values.size()) != 12)
      throw InputError("build_h_gadget: twelve D values required");
    if (static_cast<int>(q_values.size()) != N + 7)
      throw InputError("build_h_gadget: N+7 Q values required");
  }

  HGadget h;
  h.n = n;
  h.N = N;
  h.generators = gens.elements;
  h.s_elem = s_elem;
  h.m_elem = m_elem;
  h.star_only = star_only;
  if (!star_only) {
    h.d_values = d_values;
    h.q_values = q_values;
  }

  Gaining& g = h.gaining;
  g.group = group;
  Multigraph& gr = g.graph;
  int a1 = gr.add_vertex("alpha1"), a2 = gr.add_vertex("alpha2");
  int b1 = gr.add_vertex("beta1"), b2 = gr.add_vertex("beta2");
  std::vector<int> gam;
  for (int i = 1; i <= N + 1; ++i) gam.push_back(gr.add_vertex("gamma" + std::to_string(i)));
  int d1 = gr.add_vertex("delta1"), d2 = gr.add_vertex("delta2");

  auto& cols = h.manifest.collections;
  auto add = [&](const std::string& label, int u, int v, int gain, const std::string& coll) {
    gr.add_edge(label, u, v);
    g.gain.push_back(gain);
    cols[coll].push_back(label);
  };
  auto add_t_member = [&](const std::string& label) { cols["T"].push_back(label); };

  add("A_Id", a1, a2, group.identity(), "A");
  add_t_member("A_Id");
  for (int j = 0; j < n; ++j)
    add("A_" + std::to_string(j + 1), a1, a2, gens.elements[static_cast<std::size_t>(j)], "A");
  add("A_s", a1, a2, s_elem, "A");

  for (int i = 1; i <= N; ++i) {
    std::string row = "B" + std::to_string(i);
    add(row + "_Id", gam[static_cast<std::size_t>(i - 1)], gam[static_cast<std::size_t>(i)],
        group.identity(), row);
    add_t_member(row + "_Id");
    for (int j = 0; j < n; ++j)
      add(row + "_" + std::to_string(j + 1), gam[static_cast<std::size_t>(i - 1)],
          gam[static_cast<std::size_t>(i)], gens.elements[static_cast<std::size_t>(j)], row);
  }

  add("C_Id", d1, d2, group.identity(), "C");
  add_t_member("C_Id");
  for (int j = 0; j < n; ++j)
    add("C_" + std::to_string(j + 1), d1, d2, gens.elements[static_cast<std::size_t>(j)], "C");
  add("C_s", d1, d2, s_elem, "C");

  add("K1", b1, a1, m_elem, "K");
  add("K2", b1, gam[0], m_elem, "K");

  add("T1", b1, a1, group.identity(), "T");
  add("T2", a2, b2, group.identity(), "T");
  add("T3", gam[static_cast<std::size_t>(N)], b2, group.identity(), "T");
  add("T4", b1, d1, group.identity(), "T");
  add("T5", d2, b2, group.identity(), "T");

  if (!star_only) {
    const int dends[6][2] = {{b1, a1}, {a2, b2}, {b1, gam[0]},
                             {gam[static_cast<std::size_t>(N)], b2}, {b1, d1}, {d2, b2}};
    for (int i = 0; i < 6; ++i) {
      std::string row = "D" + std::to_string(i + 1);
      for (int j = 0; j < 2; ++j)
        add(row + "_" + std::to_string(j + 1), dends[i][0], dends[i][1],
            d_values[static_cast<std::size_t>(2 * i + j)], row);
    }
    std::vector<int> qverts = {a1, a2, b1, b2};
    for (int i = 0; i <= N; ++i) qverts.push_back(gam[static_cast<std::size_t>(i)]);
    qverts.push_back(d1);
    qverts.push_back(d2);
    for (int i = 0; i < N + 7; ++i)
      add("Q" + std::to_string(i + 1), qverts[static_cast<std::size_t>(i)],
          qverts[static_cast<std::size_t>(i)], q_values[static_cast<std::size_t>(i)], "Q");
  }

  h.manifest.base_vertices = {"delta1", "delta2"};
  h.manifest.base_edges = cols["C"];
  if (!star_only) {
    h.manifest.base_edges.push_back("Q" + std::to_string(N + 6));
    h.manifest.base_edges.push_back("Q" + std::to_string(N + 7));
  }

  g.validate();

  if (!star_only) {
    std::vector<int> special;
    for (const auto& row : {"D1", "D2", "D3", "D4", "D5", "D6"})
      for (const auto& l : cols[row]) special.push_back(gr.edge_index(l));
    for (const auto& l : cols["Q"]) special.push_back(gr.edge_index(l));
    check_dagger_cycles(g, special, lim, "build_h_gadget");
  }

  // designated balanced cycles: K-match, A/C transfer, B-row transfers
  {
    std::vector<std::string> vs = {"alpha1", "alpha2", "beta2"};
    std::vector<std::string> es = {"A_Id", "T2"};
    for (int i = N + 1; i >= 1; --i) vs.push_back("gamma" + std::to_string(i));
    es.push_back("T3");
    for (int i = N; i >= 1; --i) es.push_back("B" + std::to_string(i) + "_Id");
    vs.push_back("beta1");
    es.push_back("K2");
    vs.push_back("alpha1");
    es.push_back("K1");
    require_balanced_walk(g, vs, es, "build_h_gadget (K1/K2)");
  }
  for (int j = 0; j <= n; ++j) {
    std::string a_label = j == 0 ? "A_s" : "A_" + std::to_string(j);
    std::string c_label = j == 0 ? "C_s" : "C_" + std::to_string(j);
    require_balanced_walk(g,
                          {"delta2", "delta1", "beta1", "alpha1", "alpha2", "beta2", "delta2"},
                          {c_label, "T4", "T1", a_label, "T2", "T5"},
                          "build_h_gadget (A/C transfer)");
  }

  auto eta = min_balanced_eta_length(h);
  if (!eta || *eta != N)
    throw InputError("build_h_gadget: minimal balanced closing-cycle word length is not N");
  return h;
}

std::optional<int> min_balanced_eta_length(const HGadget& h) {
  const Gaining& g = h.gaining;
  const FiniteGroup& grp = g.group;
  int n = h.n, N = h.N;
  // tail of the closing cycle: gamma_{N+1} -> beta2 -> alpha2 -> alpha1 -> beta1 -> gamma1
  std::vector<int> tail_vs, tail_es;
  auto V = [&](const std::string& s) { return g.graph.vertex_index(s); };
  auto E = [&](const std::string& s) { return g.graph.edge_index(s); };
  int tail_from = V("gamma" + std::to_string(N + 1));
  tail_vs = {tail_from, V("beta2"), V("alpha2"), V("alpha1"), V("beta1"), V("gamma1")};
  tail_es = {E("T3"), E("T2"), E("A_s"), E("K1"), E("K2")};

  std::optional<int> best;
  std::vector<int> word(static_cast<std::size_t>(N), 0); // 0 = Id, 1..n = generator j
  while (true) {
    int acc = grp.identity();
    int letters = 0;
    for (int i = 0; i < N; ++i) {
      int choice = word[static_cast<std::size_t>(i)];
      std::string label = "B" + std::to_string(i + 1) + "_" +
                          (choice == 0 ? std::string("Id") : std::to_string(choice));
      acc = grp.mul(acc, g.gain[static_cast<std::size_t>(E(label))]);
      if (choice != 0) ++letters;
    }
    // closing with the tail: balanced iff gain(P_eta) equals the gain of s
    int total = acc;
    for (std::size_t i = 0; i < tail_es.size(); ++i)
      total = grp.mul(total, g.gain_of(tail_es[i], tail_vs[i], tail_vs[i + 1]));
    if (total == grp.identity())
      if (!best || letters < *best) best = letters;
    // next word
    int pos = N - 1;
    while (pos >= 0 && word[static_cast<std::size_t>(pos)] == n) {
      word[static_cast<std::size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) break;
    ++word[static_cast<std::size_t>(pos)];
  }
  return best;
}

std::optional<HParams> find_h_params(const FiniteGroup& group, const GeneratingSet& gens, int N,
                                     const Limits& lim) {
  HParams p;
  p.s_elem = -1;
  p.m_elem = -1;
  for (int e = 0; e < group.order(); ++e) {
    auto f = word_length(gens, e);
    if (p.s_elem < 0 && f && *f == N) p.s_elem = e;
    if (p.m_elem < 0 && f && *f >= 2 * N + 1) p.m_elem = e;
  }
  if (p.s_elem < 0 || p.m_elem < 0) return std::nullopt;

  HGadget star = build_h_gadget(group, gens, p.s_elem, p.m_elem, {}, {}, N, true, lim);
  // extend the star with unassigned D/Q edges, then assign greedily
  Gaining working = star.gaining;
  Multigraph& gr = working.graph;
  std::vector<int> slots;
  auto V = [&](const std::string& s) { return gr.vertex_index(s); };
  const std::pair<std::string, std::string> dends[6] = {
      {"beta1", "alpha1"}, {"alpha2", "beta2"}, {"beta1", "gamma1"},
      {"gamma" + std::to_string(N + 1), "beta2"}, {"beta1", "delta1"}, {"delta2", "beta2"}};
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 2; ++j) {
      slots.push_back(gr.add_edge("D" + std::to_string(i + 1) + "_" + std::to_string(j + 1),
                                  V(dends[i].first), V(dends[i].second)));
      working.gain.push_back(0);
    }
  std::vector<std::string> qverts = {"alpha1", "alpha2", "beta1", "beta2"};
  for (int i = 1; i <= N + 1; ++i) qverts.push_back("gamma" + std::to_string(i));
  qverts.push_back("delta1");
  qverts.push_back("delta2");
  for (int i = 0; i < N + 7; ++i) {
    slots.push_back(gr.add_edge("Q" + std::to_string(i + 1), V(qverts[static_cast<std::size_t>(i)]),
                                V(qverts[static_cast<std::size_t>(i)])));
    working.gain.push_back(0);
  }

  auto values = greedy_dagger(std::move(working), slots, lim);
  if (!values) return std::nullopt;
  p.d_values.assign(values->begin(), values->begin() + 12);
  p.q_values.assign(values->begin() + 12, values->end());
  return p;
}

// ---------------------------------------------------------------------------
// Lambda family

namespace {

void check_subgroup(const FiniteGroup& ambient, const std::vector<int>& elems, const char* who) {
  std::vector<int> closed = subgroup_generate(ambient, elems);
  if (closed != elems)
    throw InputError(std::string(who) + ": element set is not a subgroup (closure differs)");
}

} // namespace

LambdaGadget build_lambda_gadget(const FiniteGroup& ambient, const std::vector<int>& gamma1,
                                 const std::vector<int>& gamma2, int m_elem,
                                 const std::vector<int>& d_values,
                                 const std::vector<int>& q_values, bool star_only,
                                 const Limits& lim) {
  std::vector<int> g1 = gamma1, g2 = gamma2;
  std::sort(g1.begin(), g1.end());
  std::sort(g2.begin(), g2.end());
  check_subgroup(ambient, g1, "build_lambda_gadget");
  check_subgroup(ambient, g2, "build_lambda_gadget");
  if (!std::includes(g2.begin(), g2.end(), g1.begin(), g1.end()))
    throw InputError("build_lambda_gadget: gamma1 is not contained in gamma2");
  if (std::binary_search(g2.begin(), g2.end(), m_elem))
    throw InputError("build_lambda_gadget: m must lie outside gamma2");
  if (!star_only) {
    if (static_cast<int>(d_values.size()) != 22)
      throw InputError("build_lambda_gadget: twenty-two D values required");
    if (static_cast<int>(q_values.size()) != 9)
      throw InputError("build_lambda_gadget: nine Q values required");
  }

  LambdaGadget h;
  h.gamma1 = g1;
  h.gamma2 = g2;
  h.m_elem = m_elem;
  h.star_only = star_only;
  if (!star_only) {
    h.d_values = d_values;
    h.q_values = q_values;
  }

  Gaining& g = h.gaining;
  g.group = ambient;
  Multigraph& gr = g.graph;
  int a1 = gr.add_vertex("alpha1"), a2 = gr.add_vertex("alpha2");
  int b1 = gr.add_vertex("beta1"), b2 = gr.add_vertex("beta2");
  int c1 = gr.add_vertex("gamma1"), c2 = gr.add_vertex("gamma2"), c3 = gr.add_vertex("gamma3");
  int d1 = gr.add_vertex("delta1"), d2 = gr.add_vertex("delta2");

  auto& cols = h.manifest.collections;
  auto add = [&](const std::string& label, int u, int v, int gain, const std::string& coll) {
    gr.add_edge(label, u, v);
    g.gain.push_back(gain);
    cols[coll].push_back(label);
  };
  auto name_of = [&](int e) { return ambient.name(e); };

  for (int e : g1) add("A_" + name_of(e), a1, a2, e, "A");
  cols["T"].push_back("A_" + name_of(ambient.identity()));
  // B rows follow the figure arrows: B1 joins gamma2 to gamma1, B2 joins
  // gamma3 to gamma2, B3 joins gamma1 to gamma3.
  for (int e : g2) add("B1_" + name_of(e), c2, c1, e, "B1");
  cols["T"].push_back("B1_" + name_of(ambient.identity()));
  for (int e : g2) add("B2_" + name_of(e), c3, c2, e, "B2");
  cols["T"].push_back("B2_" + name_of(ambient.identity()));
  for (int e : g2) add("B3_" + name_of(e), c1, c3, e, "B3");
  cols["T"].push_back("B3_" + name_of(ambient.identity()));
  for (int e : g1) add("C_" + name_of(e), d1, d2, e, "C");
  cols["T"].push_back("C_" + name_of(ambient.identity()));

  add("K1", b1, a1, m_elem, "K");
  add("K2", b1, c1, m_elem, "K");

  add("T1", b1, a1, ambient.identity(), "T");
  add("T2", a2, b2, ambient.identity(), "T");
  add("T3", c3, b2, ambient.identity(), "T");
  add("T4", b1, d1, ambient.identity(), "T");
  add("T5", d2, b2, ambient.identity(), "T");

  if (!star_only) {
    const int dends[11][2] = {{b1, a1}, {a1, a2}, {a2, b2}, {b1, c1}, {c1, c2}, {c2, c3},
                              {c1, c3}, {c3, b2}, {b1, d1}, {d1, d2}, {d2, b2}};
    for (int i = 0; i < 11; ++i) {
      std::string row = "D" + std::to_string(i + 1);
      for (int j = 0; j < 2; ++j)
        add(row + "_" + std::to_string(j + 1), dends[i][0], dends[i][1],
            d_values[static_cast<std::size_t>(2 * i + j)], row);
    }
    const int qverts[9] = {a1, a2, c2, b1, b2, c1, c3, d1, d2};
    for (int i = 0; i < 9; ++i)
      add("Q" + std::to_string(i + 1), qverts[i], qverts[i],
          q_values[static_cast<std::size_t>(i)], "Q");
  }

  h.manifest.base_vertices = {"delta1", "delta2"};
  h.manifest.base_edges = cols["C"];
  if (!star_only) {
    h.manifest.base_edges.push_back("Q8");
    h.manifest.base_edges.push_back("Q9");
    for (const auto& l : cols["D10"]) h.manifest.base_edges.push_back(l);
  }

  g.validate();

  if (!star_only) {
    std::vector<int> special;
    for (int i = 1; i <= 11; ++i)
      for (const auto& l : cols["D" + std::to_string(i)]) special.push_back(gr.edge_index(l));
    for (const auto& l : cols["Q"]) special.push_back(gr.edge_index(l));
    check_dagger_cycles(g, special, lim, "build_lambda_gadget");
  }

  // designated balanced cycles under the drawn orientations
  std::string id_name = name_of(ambient.identity());
  require_balanced_walk(g, {"alpha1", "alpha2", "beta2", "gamma3", "gamma1", "beta1", "alpha1"},
                        {"A_" + id_name, "T2", "T3", "B3_" + id_name, "K2", "K1"},
                        "build_lambda_gadget (K1/K2)");
  for (int e : g1) {
    require_balanced_walk(g, {"delta1", "delta2", "beta2", "alpha2", "alpha1", "beta1", "delta1"},
                          {"C_" + name_of(e), "T5", "T2", "A_" + name_of(e), "T1", "T4"},
                          "build_lambda_gadget (A/C transfer)");
    require_balanced_walk(g, {"alpha1", "alpha2", "beta2", "gamma3", "gamma1", "beta1", "alpha1"},
                          {"A_" + name_of(e), "T2", "T3", "B3_" + name_of(e), "K2", "K1"},
                          "build_lambda_gadget (A/B3 transfer)");
  }
  // triangle family: gains multiply to the identity around gamma1->gamma3->gamma2->gamma1
  for (int x : g2)
    for (int y : g2) {
      int z = ambient.inv(ambient.mul(x, y)); // x·y·z = Id read B3,B2,B1 as drawn
      require_balanced_walk(g, {"gamma1", "gamma3", "gamma2", "gamma1"},
                            {"B3_" + name_of(x), "B2_" + name_of(y), "B1_" + name_of(z)},
                            "build_lambda_gadget (B triangle)");
    }
  return h;
}

std::optional<LambdaParams> find_lambda_params(const FiniteGroup& ambient,
                                               const std::vector<int>& gamma1,
                                               const std::vector<int>& gamma2,
                                               const Limits& lim,
                                               const LambdaSearchOptions& options) {
  std::vector<int> g2 = gamma2;
  std::sort(g2.begin(), g2.end());
  LambdaParams p;
  p.m_elem = -1;
  if (options.m_elem) {
    if (std::binary_search(g2.begin(), g2.end(), *options.m_elem)) return std::nullopt;
    p.m_elem = *options.m_elem;
  } else {
    for (int e = 0; e < ambient.order(); ++e)
      if (!std::binary_search(g2.begin(), g2.end(), e)) {
        p.m_elem = e;
        break;
      }
  }
  if (p.m_elem < 0) return std::nullopt;

  LambdaGadget star = build_lambda_gadget(ambient, gamma1, gamma2, p.m_elem, {}, {}, true, lim);
  Gaining working = star.gaining;
  Multigraph& gr = working.graph;
  auto V = [&](const std::string& s) { return gr.vertex_index(s); };
  std::vector<int> slots;
  const std::pair<std::string, std::string> dends[11] = {
      {"beta1", "alpha1"}, {"alpha1", "alpha2"}, {"alpha2", "beta2"}, {"beta1", "gamma1"},
      {"gamma1", "gamma2"}, {"gamma2", "gamma3"}, {"gamma1", "gamma3"}, {"gamma3", "beta2"},
      {"beta1", "delta1"}, {"delta1", "delta2"}, {"delta2", "beta2"}};
  for (int i = 0; i < 11; ++i)
    for (int j = 0; j < 2; ++j) {
      slots.push_back(gr.add_edge("D" + std::to_string(i + 1) + "_" + std::to_string(j + 1),
                                  V(dends[i].first), V(dends[i].second)));
      working.gain.push_back(0);
    }
  const char* qverts[9] = {"alpha1", "alpha2", "gamma2", "beta1", "beta2",
                           "gamma1", "gamma3", "delta1", "delta2"};
  for (int i = 0; i < 9; ++i) {
    slots.push_back(gr.add_edge("Q" + std::to_string(i + 1), V(qverts[i]), V(qverts[i])));
    working.gain.push_back(0);
  }

  std::vector<std::optional<int>> pinned(slots.size());
  for (std::size_t k = 0; k < slots.size(); ++k) {
    const std::string& label = gr.edges[static_cast<std::size_t>(slots[k])].label;
    if (auto it = options.pinned.find(label); it != options.pinned.end()) pinned[k] = it->second;
  }

  auto values = greedy_dagger(std::move(working), slots, lim, pinned);
  if (!values) return std::nullopt;
  p.d_values.assign(values->begin(), values->begin() + 22);
  p.q_values.assign(values->begin() + 22, values->end());
  return p;
}

} // namespace wb
