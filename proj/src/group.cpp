#include "wb/group.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>

#include "wb/error.hpp"

namespace wb {

namespace {

std::vector<int> compute_inverses(int order, const std::vector<int>& table) {
  std::vector<int> inv(static_cast<std::size_t>(order), -1);
  for (int g = 0; g < order; ++g)
    for (int h = 0; h < order; ++h)
      if (table[static_cast<std::size_t>(g) * order + h] == 0) inv[static_cast<std::size_t>(g)] = h;
  return inv;
}

} // namespace

FiniteGroup FiniteGroup::from_table(std::vector<std::string> names, std::vector<int> table,
                                    const Limits& lim) {
  FiniteGroup g{Raw{}};
  g.order_ = static_cast<int>(names.size());
  if (g.order_ <= 0) throw InputError("group: empty element list");
  if (table.size() != static_cast<std::size_t>(g.order_) * g.order_)
    throw InputError("group: table size mismatch");
  {
    std::set<std::string> uniq(names.begin(), names.end());
    if (static_cast<int>(uniq.size()) != g.order_) throw InputError("group: duplicate element names");
  }
  int n = g.order_;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      int v = table[static_cast<std::size_t>(i) * n + j];
      if (v < 0 || v >= n) throw InputError("group: table entry out of range");
    }
  // identity law at index 0
  for (int j = 0; j < n; ++j) {
    if (table[j] != j) throw InputError("group: row 0 is not the identity permutation");
    if (table[static_cast<std::size_t>(j) * n] != j)
      throw InputError("group: column 0 is not the identity permutation");
  }
  // Latin square
  for (int i = 0; i < n; ++i) {
    std::vector<bool> row(static_cast<std::size_t>(n)), col(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
      int r = table[static_cast<std::size_t>(i) * n + j];
      int c = table[static_cast<std::size_t>(j) * n + i];
      if (row[static_cast<std::size_t>(r)] || col[static_cast<std::size_t>(c)])
        throw InputError("group: table is not a Latin square (row/col " + std::to_string(i) + ")");
      row[static_cast<std::size_t>(r)] = col[static_cast<std::size_t>(c)] = true;
    }
  }
  if (n <= lim.assoc_check_max) {
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c) {
          int ab = table[static_cast<std::size_t>(a) * n + b];
          int bc = table[static_cast<std::size_t>(b) * n + c];
          if (table[static_cast<std::size_t>(ab) * n + c] != table[static_cast<std::size_t>(a) * n + bc])
            throw InputError("group: associativity fails at (" + names[static_cast<std::size_t>(a)] +
                             "," + names[static_cast<std::size_t>(b)] + "," + names[static_cast<std::size_t>(c)] + ")");
        }
  }
  g.names_ = std::move(names);
  g.table_ = std::move(table);
  g.inverse_ = compute_inverses(n, g.table_);
  for (int i = 0; i < n; ++i)
    if (g.inverse_[static_cast<std::size_t>(i)] < 0) throw InputError("group: missing inverse");
  return g;
}

FiniteGroup FiniteGroup::cyclic(int n) {
  if (n <= 0) throw InputError("cyclic: order must be positive");
  std::vector<std::string> names;
  std::vector<int> table(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) names.push_back(std::to_string(i));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) table[static_cast<std::size_t>(i) * n + j] = (i + j) % n;
  return from_table(std::move(names), std::move(table));
}

FiniteGroup FiniteGroup::dihedral(int n) {
  if (n <= 0) throw InputError("dihedral: parameter must be positive");
  int order = 2 * n;
  // element (j, k) = s^j r^k at index j*n + k
  auto idx = [n](int j, int k) { return j * n + ((k % n) + n) % n; };
  std::vector<std::string> names(static_cast<std::size_t>(order));
  for (int k = 0; k < n; ++k) {
    names[static_cast<std::size_t>(idx(0, k))] = "r" + std::to_string(k);
    names[static_cast<std::size_t>(idx(1, k))] = "s" + std::to_string(k);
  }
  std::vector<int> table(static_cast<std::size_t>(order) * order);
  for (int j1 = 0; j1 < 2; ++j1)
    for (int k1 = 0; k1 < n; ++k1)
      for (int j2 = 0; j2 < 2; ++j2)
        for (int k2 = 0; k2 < n; ++k2) {
          // s^j1 r^k1 · s^j2 r^k2 = s^(j1^j2) r^(k2 ± k1)
          int k = j2 ? (k2 - k1) : (k2 + k1);
          table[static_cast<std::size_t>(idx(j1, k1)) * order + idx(j2, k2)] = idx(j1 ^ j2, k);
        }
  return from_table(std::move(names), std::move(table));
}

FiniteGroup FiniteGroup::symmetric(int n) {
  if (n < 1 || n > 5) throw InputError("symmetric: supported for 1 <= n <= 5");
  std::vector<std::vector<int>> perms;
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  // lexicographic order puts the identity first
  int order = static_cast<int>(perms.size());
  auto rank = [&](const std::vector<int>& q) {
    return static_cast<int>(std::lower_bound(perms.begin(), perms.end(), q) - perms.begin());
  };
  std::vector<std::string> names;
  for (auto& q : perms) {
    std::string s;
    for (int v : q) s += static_cast<char>('0' + v);
    names.push_back(s);
  }
  std::vector<int> table(static_cast<std::size_t>(order) * order);
  std::vector<int> comp(static_cast<std::size_t>(n));
  for (int i = 0; i < order; ++i)
    for (int j = 0; j < order; ++j) {
      // (g·h)(x) = g(h(x))
      for (int x = 0; x < n; ++x) comp[static_cast<std::size_t>(x)] = perms[static_cast<std::size_t>(i)][static_cast<std::size_t>(perms[static_cast<std::size_t>(j)][static_cast<std::size_t>(x)])];
      table[static_cast<std::size_t>(i) * order + j] = rank(comp);
    }
  return from_table(std::move(names), std::move(table));
}

FiniteGroup FiniteGroup::product(const FiniteGroup& a, const FiniteGroup& b) {
  int na = a.order(), nb = b.order();
  int order = na * nb;
  auto idx = [nb](int ia, int ib) { return ia * nb + ib; };
  std::vector<std::string> names(static_cast<std::size_t>(order));
  for (int ia = 0; ia < na; ++ia)
    for (int ib = 0; ib < nb; ++ib)
      names[static_cast<std::size_t>(idx(ia, ib))] = "(" + a.name(ia) + "," + b.name(ib) + ")";
  std::vector<int> table(static_cast<std::size_t>(order) * order);
  for (int ia = 0; ia < na; ++ia)
    for (int ib = 0; ib < nb; ++ib)
      for (int ja = 0; ja < na; ++ja)
        for (int jb = 0; jb < nb; ++jb)
          table[static_cast<std::size_t>(idx(ia, ib)) * order + idx(ja, jb)] =
              idx(a.mul(ia, ja), b.mul(ib, jb));
  return from_table(std::move(names), std::move(table));
}

int FiniteGroup::element_order(int g) const {
  int k = 1, x = g;
  while (x != 0) {
    x = mul(x, g);
    ++k;
  }
  return k;
}

int FiniteGroup::index_of(const std::string& name) const {
  for (int i = 0; i < order_; ++i)
    if (names_[static_cast<std::size_t>(i)] == name) return i;
  return -1;
}

GeneratingSet GeneratingSet::make(const FiniteGroup& g, std::vector<int> elems) {
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  for (int e : elems) {
    if (e < 0 || e >= g.order()) throw InputError("generating set: element index out of range");
    if (!std::binary_search(elems.begin(), elems.end(), g.inv(e)))
      throw InputError("generating set: not closed under inverses (missing inverse of " + g.name(e) + ")");
  }
  return GeneratingSet{&g, std::move(elems)};
}

void WordSystem::validate() const {
  if (arity <= 0) throw InputError("word system: arity must be positive");
  auto check = [&](const Word& w) {
    for (const Letter& l : w)
      if (l.var < 1 || l.var > arity) throw InputError("word system: symbol index out of range");
  };
  for (const Word& w : equalities) check(w);
  for (const Word& w : inequalities) check(w);
}

bool Monomorphism::verify() const {
  if (!source || !target) return false;
  int n = source->order();
  if (static_cast<int>(map.size()) != n) return false;
  std::vector<bool> seen(static_cast<std::size_t>(target->order()));
  for (int v : map) {
    if (v < 0 || v >= target->order() || seen[static_cast<std::size_t>(v)]) return false;
    seen[static_cast<std::size_t>(v)] = true;
  }
  if (map[0] != 0) return false;
  for (int g = 0; g < n; ++g)
    for (int h = 0; h < n; ++h)
      if (map[static_cast<std::size_t>(source->mul(g, h))] !=
          target->mul(map[static_cast<std::size_t>(g)], map[static_cast<std::size_t>(h)]))
        return false;
  return true;
}

std::vector<int> subgroup_generate(const FiniteGroup& g, const std::vector<int>& seeds) {
  for (int s : seeds)
    if (s < 0 || s >= g.order()) throw InputError("subgroup_generate: seed out of range");
  std::vector<bool> in(static_cast<std::size_t>(g.order()));
  std::deque<int> queue;
  auto push = [&](int x) {
    if (!in[static_cast<std::size_t>(x)]) {
      in[static_cast<std::size_t>(x)] = true;
      queue.push_back(x);
    }
  };
  push(0);
  for (int s : seeds) push(s);
  std::vector<int> members;
  while (!queue.empty()) {
    int x = queue.front();
    queue.pop_front();
    members.push_back(x);
    push(g.inv(x));
    for (int y = 0; y < g.order(); ++y)
      if (in[static_cast<std::size_t>(y)]) {
        push(g.mul(x, y));
        push(g.mul(y, x));
      }
  }
  // members may have been collected before later products appeared; rescan
  std::vector<int> out;
  for (int x = 0; x < g.order(); ++x)
    if (in[static_cast<std::size_t>(x)]) out.push_back(x);
  return out;
}

std::optional<int> word_length(const GeneratingSet& gens, int g) {
  const FiniteGroup& grp = *gens.group;
  if (g < 0 || g >= grp.order()) throw InputError("word_length: element out of range");
  std::vector<int> dist(static_cast<std::size_t>(grp.order()), -1);
  std::deque<int> queue;
  dist[0] = 0;
  queue.push_back(0);
  while (!queue.empty()) {
    int x = queue.front();
    queue.pop_front();
    for (int a : gens.elements) {
      int y = grp.mul(x, a);
      if (dist[static_cast<std::size_t>(y)] < 0) {
        dist[static_cast<std::size_t>(y)] = dist[static_cast<std::size_t>(x)] + 1;
        queue.push_back(y);
      }
    }
  }
  if (dist[static_cast<std::size_t>(g)] < 0) return std::nullopt;
  return dist[static_cast<std::size_t>(g)];
}

namespace {

// Greedy small generating sequence: repeatedly adjoin the least element
// outside the subgroup generated so far.
std::vector<int> generating_sequence(const FiniteGroup& g) {
  std::vector<int> gens;
  std::vector<int> span = subgroup_generate(g, {});
  while (static_cast<int>(span.size()) < g.order()) {
    int next = -1;
    for (int x = 0; x < g.order(); ++x)
      if (!std::binary_search(span.begin(), span.end(), x)) {
        next = x;
        break;
      }
    gens.push_back(next);
    span = subgroup_generate(g, gens);
  }
  return gens;
}

struct MonoSearch {
  const FiniteGroup& src;
  const FiniteGroup& tgt;
  const std::vector<int>& gens;
  const Limits& lim;
  std::uint64_t visited = 0;
  std::vector<std::vector<int>> found;

  // Extends generator images to a full map by closure; nullopt on clash.
  std::optional<std::vector<int>> close(const std::vector<int>& images) const {
    std::vector<int> map(static_cast<std::size_t>(src.order()), -1);
    map[0] = 0;
    // BFS over the source, multiplying by generators on the right
    std::deque<int> queue{0};
    std::vector<bool> seen(static_cast<std::size_t>(src.order()));
    seen[0] = true;
    while (!queue.empty()) {
      int x = queue.front();
      queue.pop_front();
      for (std::size_t k = 0; k < gens.size(); ++k) {
        int y = src.mul(x, gens[k]);
        int im = tgt.mul(map[static_cast<std::size_t>(x)], images[k]);
        if (map[static_cast<std::size_t>(y)] < 0)
          map[static_cast<std::size_t>(y)] = im;
        else if (map[static_cast<std::size_t>(y)] != im)
          return std::nullopt;
        if (!seen[static_cast<std::size_t>(y)]) {
          seen[static_cast<std::size_t>(y)] = true;
          queue.push_back(y);
        }
      }
    }
    // injectivity
    std::vector<bool> used(static_cast<std::size_t>(tgt.order()));
    for (int v : map) {
      if (v < 0 || used[static_cast<std::size_t>(v)]) return std::nullopt;
      used[static_cast<std::size_t>(v)] = true;
    }
    // homomorphism on all pairs
    for (int a = 0; a < src.order(); ++a)
      for (int b = 0; b < src.order(); ++b)
        if (map[static_cast<std::size_t>(src.mul(a, b))] !=
            tgt.mul(map[static_cast<std::size_t>(a)], map[static_cast<std::size_t>(b)]))
          return std::nullopt;
    return map;
  }

  void run(std::vector<int>& images, std::size_t k) {
    if (++visited > lim.search_states)
      throw BudgetError("enumerate_monomorphisms: search cap exceeded");
    if (k == gens.size()) {
      if (auto map = close(images)) found.push_back(std::move(*map));
      return;
    }
    int want = src.element_order(gens[static_cast<std::size_t>(k)]);
    for (int t = 0; t < tgt.order(); ++t) {
      if (tgt.element_order(t) != want) continue; // injectivity forces equal orders
      images[k] = t;
      run(images, k + 1);
    }
  }
};

} // namespace

std::vector<Monomorphism> enumerate_monomorphisms(const FiniteGroup& source,
                                                  const FiniteGroup& target,
                                                  const Limits& lim) {
  if (source.order() > target.order()) return {};
  if (target.order() % source.order() != 0) return {}; // Lagrange
  std::vector<int> gens = generating_sequence(source);
  MonoSearch search{source, target, gens, lim};
  if (gens.empty()) {
    // trivial source: the unique map sends identity to identity
    std::vector<Monomorphism> out;
    out.push_back(Monomorphism{&source, &target, {0}});
    return out;
  }
  std::vector<int> images(gens.size());
  search.run(images, 0);
  std::sort(search.found.begin(), search.found.end());
  search.found.erase(std::unique(search.found.begin(), search.found.end()), search.found.end());
  std::vector<Monomorphism> out;
  out.reserve(search.found.size());
  for (auto& m : search.found) out.push_back(Monomorphism{&source, &target, std::move(m)});
  return out;
}

int evaluate_word(const FiniteGroup& g, const WordSystem::Word& w,
                  const std::vector<int>& assignment) {
  int acc = 0;
  for (const auto& letter : w) {
    int v = assignment[static_cast<std::size_t>(letter.var - 1)];
    acc = g.mul(acc, letter.primed ? g.inv(v) : v);
  }
  return acc;
}

std::optional<std::vector<int>> solves_pair(const FiniteGroup& g, const WordSystem& sys,
                                            const Limits& lim) {
  sys.validate();
  std::uint64_t total = 1;
  for (int i = 0; i < sys.arity; ++i) {
    total *= static_cast<std::uint64_t>(g.order());
    if (total > lim.search_states)
      throw BudgetError("solves_pair: order^arity exceeds the search cap");
  }
  std::vector<int> assignment(static_cast<std::size_t>(sys.arity), 0);
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t c = code;
    // lexicographic on the tuple: first variable is the most significant digit
    for (int i = sys.arity - 1; i >= 0; --i) {
      assignment[static_cast<std::size_t>(i)] = static_cast<int>(c % g.order());
      c /= static_cast<std::uint64_t>(g.order());
    }
    bool ok = true;
    for (const auto& w : sys.equalities)
      if (evaluate_word(g, w, assignment) != 0) {
        ok = false;
        break;
      }
    if (ok)
      for (const auto& w : sys.inequalities)
        if (evaluate_word(g, w, assignment) == 0) {
          ok = false;
          break;
        }
    if (ok) return assignment;
  }
  return std::nullopt;
}

} // namespace wb
