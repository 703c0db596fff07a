#pragma once

// Shared generators for the randomized suites. Everything is seeded and
// deterministic.

#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "wb/coloured.hpp"
#include "wb/error.hpp"
#include "wb/gain.hpp"
#include "wb/logic.hpp"
#include "wb/matroid.hpp"

namespace wbtest {

using namespace wb;

inline int rnd(std::mt19937_64& rng, int lo, int hi) {
  return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

/// Random formula respecting the formation rules; at most `budget` nodes,
/// variables from Z1..Znvars, count moduli at most qmax (qmax < 2 disables
/// counting atoms).
inline Formula random_formula(std::mt19937_64& rng, int budget, int nvars, int qmax) {
  auto atom = [&]() -> Formula {
    int pick = rnd(rng, 0, qmax >= 2 ? 2 : 1);
    int i = rnd(rng, 1, nvars);
    if (pick == 0) return Formula::hyp(i);
    if (pick == 1) return Formula::subset(i, rnd(rng, 1, nvars));
    int q = rnd(rng, 2, qmax);
    return Formula::count(i, rnd(rng, 0, q - 1), q);
  };
  auto rec = [&](auto&& self, int nodes) -> Formula {
    if (nodes <= 1) return atom();
    switch (rnd(rng, 0, 3)) {
      case 0:
        return Formula::negation(self(self, nodes - 1));
      case 1: {
        int left = rnd(rng, 1, nodes - 2 > 0 ? nodes - 2 : 1);
        for (int attempt = 0; attempt < 8; ++attempt) {
          Formula a = self(self, left);
          Formula b = self(self, nodes - 1 - left);
          try {
            return Formula::conjunction(a, b);
          } catch (const InputError&) {
          }
        }
        return atom();
      }
      case 2: {
        Formula body = self(self, nodes - 1);
        std::vector<int> free;
        for (int v = 1; v <= nvars; ++v)
          if (body.free() & var_bit(v)) free.push_back(v);
        if (free.empty()) return body;
        return Formula::exists(free[static_cast<std::size_t>(rnd(
                                   rng, 0, static_cast<int>(free.size()) - 1))],
                               body);
      }
      default:
        return atom();
    }
  };
  return rec(rec, budget);
}

inline std::vector<std::string> numbered(const std::string& prefix, int n) {
  std::vector<std::string> out;
  for (int i = 1; i <= n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

inline ColouredSystem random_system(std::mt19937_64& rng, int ground_size, int colour_count,
                                    const std::string& prefix = "u") {
  ColouredSystem s;
  s.ground = numbered(prefix, ground_size);
  s.colours = numbered("", 0);
  for (int c = 1; c <= colour_count; ++c) s.colours.push_back(std::to_string(c));
  s.colour.resize(std::size_t{1} << ground_size);
  for (auto& c : s.colour) c = static_cast<std::uint8_t>(rng() % colour_count);
  return s;
}

inline ColouredComplement random_complement(std::mt19937_64& rng, int ground_size,
                                            int colour_count, const std::string& prefix = "v") {
  ColouredComplement c;
  c.ground = numbered(prefix, ground_size);
  for (int k = 1; k <= colour_count; ++k) c.colours.push_back(std::to_string(k));
  c.accept.resize((std::size_t{1} << ground_size) * static_cast<std::size_t>(colour_count));
  for (auto& b : c.accept) b = rng() & 1;
  return c;
}

inline Interpretation random_interpretation(std::mt19937_64& rng, VarSet dom, Mask full) {
  Interpretation out;
  for (int v = 1; v <= 64; ++v)
    if (dom & var_bit(v)) out[v] = static_cast<Mask>(rng()) & full;
  return out;
}

/// A matroid from explicit GF(3) columns; rank by elimination. Used as the
/// independent construction route for random amalgam instances.
inline Matroid matroid_from_columns(const std::vector<std::string>& ground,
                                    const std::vector<std::vector<int>>& cols, int dim) {
  auto rank_of = [&](Mask m) {
    std::vector<std::vector<int>> rows;
    for_each_bit(m, [&](int i) { rows.push_back(cols[static_cast<std::size_t>(i)]); });
    int rank = 0;
    for (int c = 0; c < dim; ++c) {
      int pivot = -1;
      for (std::size_t r = static_cast<std::size_t>(rank); r < rows.size() && pivot < 0; ++r)
        if (rows[r][static_cast<std::size_t>(c)] % 3 != 0) pivot = static_cast<int>(r);
      if (pivot < 0) continue;
      std::swap(rows[static_cast<std::size_t>(rank)], rows[static_cast<std::size_t>(pivot)]);
      auto& pr = rows[static_cast<std::size_t>(rank)];
      int inv = pr[static_cast<std::size_t>(c)] % 3 == 1 ? 1 : 2;
      for (std::size_t r = static_cast<std::size_t>(rank) + 1; r < rows.size(); ++r) {
        int f = (rows[r][static_cast<std::size_t>(c)] * inv) % 3;
        for (int k = 0; k < dim; ++k)
          rows[r][static_cast<std::size_t>(k)] =
              ((rows[r][static_cast<std::size_t>(k)] - f * pr[static_cast<std::size_t>(k)]) % 3 + 3) % 3;
      }
      ++rank;
    }
    return rank;
  };
  int n = static_cast<int>(ground.size());
  std::vector<std::uint8_t> indep(std::size_t{1} << n);
  for (Mask m = 0; m < (Mask{1} << n); ++m)
    indep[static_cast<std::size_t>(m)] = rank_of(m) == popcount(m) ? 1 : 0;
  Hypergraph h;
  h.ground = ground;
  h.member = std::move(indep);
  return require_matroid(h);
}

struct AmalgamPair {
  Matroid m1, m2;
  std::vector<std::string> base;
};

/// Two vector matroids over GF(3) sharing a rank-2 base: the base columns
/// are fixed slopes, so the restrictions agree by construction.
inline AmalgamPair random_amalgam_pair(std::mt19937_64& rng, int max_side_extra) {
  int base_size = rnd(rng, 2, 3);
  std::vector<std::vector<int>> base_cols = {{1, 0, 0, 0}, {0, 1, 0, 0}};
  if (base_size == 3) {
    // a third base element: parallel slope, a fresh slope on the line, or a loop
    switch (rnd(rng, 0, 3)) {
      case 0: base_cols.push_back({1, 0, 0, 0}); break;
      case 1: base_cols.push_back({1, 1, 0, 0}); break;
      case 2: base_cols.push_back({1, 2, 0, 0}); break;
      default: base_cols.push_back({0, 0, 0, 0}); break;
    }
  }
  std::vector<std::string> base = numbered("l", base_size);

  auto side = [&](const std::string& prefix) {
    int extra = rnd(rng, 1, max_side_extra);
    int dim = rnd(rng, 2, 4);
    std::vector<std::string> ground = base;
    std::vector<std::vector<int>> cols;
    for (const auto& bc : base_cols) cols.push_back({bc[0], bc[1], bc[2], bc[3]});
    for (int i = 0; i < extra; ++i) {
      ground.push_back(prefix + std::to_string(i));
      std::vector<int> c(4, 0);
      for (int d = 0; d < dim; ++d) c[static_cast<std::size_t>(d)] = rnd(rng, 0, 2);
      cols.push_back(std::move(c));
    }
    return matroid_from_columns(ground, cols, 4);
  };
  return AmalgamPair{side("x"), side("y"), base};
}

/// Renames every vertex except the two base vertices and every edge outside
/// keep_edges by appending "p", so two gadget copies share exactly the base.
inline Gaining tick_rename(const Gaining& g, const std::set<std::string>& keep_edges,
                           const std::string& u, const std::string& v) {
  Gaining out = g;
  for (auto& name : out.graph.vertices)
    if (name != u && name != v) name += "p";
  for (auto& e : out.graph.edges)
    if (!keep_edges.count(e.label)) e.label += "p";
  return out;
}

/// A gain-graph amalgam evaluated through rank oracles only, for ground
/// sets too large to materialize. frame_dependent reads the amalgam's frame
/// matroid via the rank formula; split_dependent runs the rank-2-base
/// dependence split on the two sides. The two must agree whenever the
/// amalgam hypotheses hold.
struct OracleAmalgam {
  Gaining side1, side2, joined;
  std::vector<std::string> base_labels;
  std::map<std::string, int> edge1, edge2;
  Mask base1 = 0, base2 = 0;
  std::vector<int> to1, to2;

  OracleAmalgam(Gaining a, Gaining b, std::vector<std::string> base, const std::string& u,
                const std::string& v)
      : side1(std::move(a)),
        side2(std::move(b)),
        joined(gain_graph_amalgam(side1, side2, u, v)),
        base_labels(std::move(base)) {
    for (int e = 0; e < side1.graph.edge_count(); ++e)
      edge1[side1.graph.edges[static_cast<std::size_t>(e)].label] = e;
    for (int e = 0; e < side2.graph.edge_count(); ++e)
      edge2[side2.graph.edges[static_cast<std::size_t>(e)].label] = e;
    for (const auto& l : base_labels) {
      base1 |= bit(edge1.at(l));
      base2 |= bit(edge2.at(l));
    }
    int n = joined.graph.edge_count();
    to1.assign(static_cast<std::size_t>(n), -1);
    to2.assign(static_cast<std::size_t>(n), -1);
    for (int e = 0; e < n; ++e) {
      const std::string& l = joined.graph.edges[static_cast<std::size_t>(e)].label;
      if (auto it = edge1.find(l); it != edge1.end()) to1[static_cast<std::size_t>(e)] = it->second;
      if (auto it = edge2.find(l); it != edge2.end()) to2[static_cast<std::size_t>(e)] = it->second;
    }
  }

  int edge(const std::string& l) const { return joined.graph.edge_index(l); }
  int edge_count() const { return joined.graph.edge_count(); }

  bool frame_dependent(Mask x) const { return frame_rank(joined, x) < popcount(x); }

  bool split_dependent(Mask x) const {
    Mask x1 = 0, x2 = 0, only1 = 0, only2 = 0;
    for_each_bit(x, [&](int e) {
      int a = to1[static_cast<std::size_t>(e)], b = to2[static_cast<std::size_t>(e)];
      if (a >= 0) x1 |= bit(a);
      if (b >= 0) x2 |= bit(b);
      if (a >= 0 && b < 0) only1 |= bit(a);
      if (b >= 0 && a < 0) only2 |= bit(b);
    });
    auto r1 = [&](Mask m) { return frame_rank(side1, m); };
    auto r2 = [&](Mask m) { return frame_rank(side2, m); };
    if (r1(x1) < popcount(x1) || r2(x2) < popcount(x2)) return true;
    bool spans1 = r1(x1 | base1) == r1(x1);
    bool spans2 = r2(x2 | base2) == r2(x2);
    bool skew2 = r2(only2) + r2(base2) == r2(only2 | base2);
    bool skew1 = r1(only1) + r1(base1) == r1(only1 | base1);
    if (spans1 && !skew2) return true;
    if (spans2 && !skew1) return true;
    for (const auto& l : base_labels) {
      int e1 = edge1.at(l), e2 = edge2.at(l);
      if (r1(bit(e1)) != 1) continue; // (iii) wants a non-loop witness
      if (r1(only1 | bit(e1)) == r1(only1) && r2(only2 | bit(e2)) == r2(only2)) return true;
    }
    return false;
  }
};

/// Independent two-sum oracle straight from the circuit description.
inline Matroid two_sum_oracle(const Matroid& m, const Matroid& n, const std::string& basepoint) {
  int pm = m.label_index(basepoint), pn = n.label_index(basepoint);
  std::vector<std::string> ground;
  for (int i = 0; i < m.size(); ++i)
    if (i != pm) ground.push_back(m.ground()[static_cast<std::size_t>(i)]);
  int offset = static_cast<int>(ground.size());
  for (int i = 0; i < n.size(); ++i)
    if (i != pn) ground.push_back(n.ground()[static_cast<std::size_t>(i)]);

  auto strip = [](Mask c, int p) {
    Mask out = 0;
    int b = 0;
    for (int i = 0; i < 64; ++i) {
      if (i == p) continue;
      if (has(c, i)) out |= bit(b);
      ++b;
    }
    return out;
  };

  std::vector<Mask> circuits;
  std::vector<Mask> m_with_p, n_with_p;
  for (Mask c : circuits_of(m)) {
    if (has(c, pm))
      m_with_p.push_back(strip(c, pm));
    else
      circuits.push_back(strip(c, pm));
  }
  for (Mask c : circuits_of(n)) {
    if (has(c, pn))
      n_with_p.push_back(strip(c, pn) << offset);
    else
      circuits.push_back(strip(c, pn) << offset);
  }
  for (Mask cm : m_with_p)
    for (Mask cn : n_with_p) circuits.push_back(cm | cn);
  return matroid_from_circuits(ground, circuits);
}

} // namespace wbtest
