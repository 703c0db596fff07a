#include "wb/conviviality.hpp"

#include <algorithm>
#include <set>

#include "wb/error.hpp"

namespace wb {

std::vector<std::vector<int>> subgroups_of(const FiniteGroup& g, const Limits& lim) {
  if (g.order() > lim.conviviality_order_max)
    throw BudgetError("subgroups_of: group order above cap");
  std::set<std::vector<int>> seen;
  std::vector<std::vector<int>> frontier{subgroup_generate(g, {})};
  seen.insert(frontier[0]);
  while (!frontier.empty()) {
    std::vector<std::vector<int>> next;
    for (const auto& sub : frontier)
      for (int x = 0; x < g.order(); ++x) {
        if (std::binary_search(sub.begin(), sub.end(), x)) continue;
        std::vector<int> seeds = sub;
        seeds.push_back(x);
        std::vector<int> grown = subgroup_generate(g, seeds);
        if (seen.insert(grown).second) next.push_back(std::move(grown));
        if (seen.size() > lim.search_states)
          throw BudgetError("subgroups_of: subgroup count above cap");
      }
    frontier = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

FiniteGroup subgroup_as_group(const FiniteGroup& g, const std::vector<int>& elements) {
  std::vector<int> el = elements;
  std::sort(el.begin(), el.end());
  auto pos = [&](int x) {
    auto it = std::lower_bound(el.begin(), el.end(), x);
    if (it == el.end() || *it != x)
      throw InputError("subgroup_as_group: element set not closed under products");
    return static_cast<int>(it - el.begin());
  };
  int n = static_cast<int>(el.size());
  std::vector<std::string> names;
  for (int x : el) names.push_back(g.name(x));
  std::vector<int> table(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      table[static_cast<std::size_t>(i) * n + j] =
          pos(g.mul(el[static_cast<std::size_t>(i)], el[static_cast<std::size_t>(j)]));
  return FiniteGroup::from_table(std::move(names), std::move(table));
}

namespace {

bool isomorphic(const FiniteGroup& a, const FiniteGroup& b, const Limits& lim) {
  if (a.order() != b.order()) return false;
  return !enumerate_monomorphisms(a, b, lim).empty();
}

std::vector<int> compose(const std::vector<int>& outer, const std::vector<int>& inner) {
  std::vector<int> out(inner.size());
  for (std::size_t i = 0; i < inner.size(); ++i)
    out[i] = outer[static_cast<std::size_t>(inner[i])];
  return out;
}

} // namespace

ConvivialityGraph elementary_conviviality_graph(const FiniteGroup& ambient,
                                                const FiniteGroup& f_group, const Limits& lim) {
  ConvivialityGraph out;
  out.ambient = ambient;
  out.f_group = f_group;

  // subgroup representatives up to isomorphism, deterministic: first by
  // order, then least multiplication table
  std::vector<FiniteGroup> reps;
  for (const auto& elems : subgroups_of(ambient, lim)) {
    FiniteGroup sub = subgroup_as_group(ambient, elems);
    bool known = false;
    for (auto& r : reps)
      if (isomorphic(sub, r, lim)) {
        if (sub.order() == r.order() &&
            (sub.table() < r.table() || (sub.table() == r.table() && sub.names() < r.names())))
          r = sub; // keep the lexicographically least table as the class face
        known = true;
        break;
      }
    if (!known) reps.push_back(std::move(sub));
  }
  std::sort(reps.begin(), reps.end(), [](const FiniteGroup& a, const FiniteGroup& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    if (a.table() != b.table()) return a.table() < b.table();
    return a.names() < b.names();
  });

  // vertices: psi orbits under Aut(Gamma), least map as representative
  struct PendingVertex {
    std::size_t rep_index;
    std::vector<int> psi;
  };
  std::vector<PendingVertex> pending;
  std::vector<std::vector<std::vector<int>>> automorphisms(reps.size());
  for (std::size_t gi = 0; gi < reps.size(); ++gi) {
    const FiniteGroup& gamma = reps[gi];
    std::vector<Monomorphism> monos = enumerate_monomorphisms(f_group, gamma, lim);
    if (monos.empty()) continue;
    for (const auto& aut : enumerate_monomorphisms(gamma, gamma, lim))
      automorphisms[gi].push_back(aut.map);
    std::set<std::vector<int>> seen;
    for (const auto& mono : monos) {
      if (seen.count(mono.map)) continue;
      std::vector<int> least = mono.map;
      for (const auto& aut : automorphisms[gi]) {
        std::vector<int> moved = compose(aut, mono.map);
        seen.insert(moved);
        if (moved < least) least = moved;
      }
      pending.push_back(PendingVertex{gi, std::move(least)});
    }
  }
  std::sort(pending.begin(), pending.end(), [](const PendingVertex& a, const PendingVertex& b) {
    if (a.rep_index != b.rep_index) return a.rep_index < b.rep_index;
    return a.psi < b.psi;
  });

  // realisable F -> ambient maps per vertex decide adjacency
  std::vector<std::set<std::vector<int>>> realizable;
  for (const auto& v : pending) {
    std::set<std::vector<int>> maps;
    for (const auto& theta : enumerate_monomorphisms(reps[v.rep_index], ambient, lim))
      maps.insert(compose(theta.map, v.psi));
    realizable.push_back(std::move(maps));
    out.vertices.push_back(ConvivialityVertex{reps[v.rep_index], v.psi});
  }

  std::size_t n = out.vertices.size();
  out.adjacency.assign(n * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      bool touch = false;
      for (const auto& m : realizable[i])
        if (realizable[j].count(m)) {
          touch = true;
          break;
        }
      out.adjacency[i * n + j] = out.adjacency[j * n + i] = touch ? 1 : 0;
    }
  return out;
}

ConvivialityGraph quotient_conviviality_graph(const ConvivialityGraph& g) {
  std::size_t n = g.vertices.size();
  std::vector<std::vector<std::size_t>> cells;
  std::vector<long> cell_of(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    if (cell_of[i] >= 0) continue;
    std::vector<std::size_t> cell{i};
    cell_of[i] = static_cast<long>(cells.size());
    for (std::size_t j = i + 1; j < n; ++j) {
      if (cell_of[j] >= 0) continue;
      bool same = true;
      for (std::size_t k = 0; k < n && same; ++k)
        if (g.adjacent(i, k) != g.adjacent(j, k)) same = false;
      if (same) {
        cell.push_back(j);
        cell_of[j] = static_cast<long>(cells.size());
      }
    }
    cells.push_back(std::move(cell));
  }

  ConvivialityGraph out;
  out.ambient = g.ambient;
  out.f_group = g.f_group;
  std::size_t m = cells.size();
  for (const auto& cell : cells) out.vertices.push_back(g.vertices[cell[0]]);
  out.adjacency.assign(m * m, 0);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      out.adjacency[a * m + b] = g.adjacent(cells[a][0], cells[b][0]) ? 1 : 0;
  out.cells = std::move(cells);
  return out;
}

} // namespace wb
