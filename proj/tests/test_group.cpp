#include "doctest.h"

#include <algorithm>
#include <set>

#include "wb/error.hpp"
#include "wb/group.hpp"
#include "wb/subset.hpp"

using namespace wb;

namespace {

// Independent oracle: reachable products by explicit word length, no BFS.
std::set<int> products_of_length(const FiniteGroup& g, const std::vector<int>& gens, int len) {
  std::set<int> out{g.identity()};
  for (int step = 0; step < len; ++step) {
    std::set<int> next;
    for (int x : out)
      for (int a : gens) next.insert(g.mul(x, a));
    next.insert(out.begin(), out.end()); // shorter words still count
    out = std::move(next);
  }
  return out;
}

int oracle_word_length(const FiniteGroup& g, const std::vector<int>& gens, int target) {
  for (int len = 0; len <= g.order(); ++len)
    if (products_of_length(g, gens, len).count(target)) return len;
  return -1;
}

// Independent oracle: all injective identity-preserving homomorphisms by
// scanning every map, feasible for tiny groups.
int oracle_mono_count(const FiniteGroup& src, const FiniteGroup& tgt) {
  int n = src.order(), m = tgt.order();
  std::vector<int> map(static_cast<std::size_t>(n), 0);
  long total = 1;
  for (int i = 1; i < n; ++i) total *= m;
  int count = 0;
  for (long code = 0; code < total; ++code) {
    long c = code;
    for (int i = 1; i < n; ++i) {
      map[static_cast<std::size_t>(i)] = static_cast<int>(c % m);
      c /= m;
    }
    std::set<int> image(map.begin(), map.end());
    if (static_cast<int>(image.size()) != n) continue;
    bool hom = true;
    for (int a = 0; a < n && hom; ++a)
      for (int b = 0; b < n && hom; ++b)
        if (map[static_cast<std::size_t>(src.mul(a, b))] !=
            tgt.mul(map[static_cast<std::size_t>(a)], map[static_cast<std::size_t>(b)]))
          hom = false;
    if (hom) ++count;
  }
  return count;
}

bool closed_under_ops(const FiniteGroup& g, const std::vector<int>& s) {
  for (int a : s) {
    if (!std::binary_search(s.begin(), s.end(), g.inv(a))) return false;
    for (int b : s)
      if (!std::binary_search(s.begin(), s.end(), g.mul(a, b))) return false;
  }
  return std::binary_search(s.begin(), s.end(), 0);
}

} // namespace

TEST_CASE("builtin groups are valid and have expected orders") {
  CHECK(FiniteGroup::cyclic(6).order() == 6);
  CHECK(FiniteGroup::dihedral(4).order() == 8);
  CHECK(FiniteGroup::symmetric(3).order() == 6);
  CHECK(FiniteGroup::symmetric(4).order() == 24);
  CHECK(FiniteGroup::product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(3)).order() == 6);
}

TEST_CASE("group arithmetic identities") {
  for (const FiniteGroup& g :
       {FiniteGroup::cyclic(7), FiniteGroup::dihedral(5), FiniteGroup::symmetric(4),
        FiniteGroup::product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(4))}) {
    for (int x = 0; x < g.order(); ++x) {
      CHECK(g.mul(x, g.inv(x)) == g.identity());
      CHECK(g.inv(g.inv(x)) == x);
    }
  }
}

TEST_CASE("from_table rejects broken tables") {
  // associativity failure: a Latin square with identity that is no group
  std::vector<std::string> names{"e", "a", "b", "c", "d"};
  // rows: e, then a 5x5 Latin square built from a non-associative quasigroup
  std::vector<int> t = {
      0, 1, 2, 3, 4,
      1, 0, 3, 4, 2,
      2, 4, 0, 1, 3,
      3, 2, 4, 0, 1,
      4, 3, 1, 2, 0,
  };
  CHECK_THROWS_AS(FiniteGroup::from_table(names, t), InputError);
}

TEST_CASE("subgroup_generate matches the spec examples") {
  FiniteGroup z6 = FiniteGroup::cyclic(6);
  CHECK(subgroup_generate(z6, {2, 4}) == std::vector<int>{0, 2, 4});
  CHECK(subgroup_generate(z6, {1}) == std::vector<int>{0, 1, 2, 3, 4, 5});

  FiniteGroup s3 = FiniteGroup::symmetric(3);
  // transpositions sit at indices 1 ("021"), 2 ("102"), 5 ("210")
  CHECK(s3.element_order(1) == 2);
  CHECK(s3.element_order(2) == 2);
  std::vector<int> all = subgroup_generate(s3, {1, 2});
  CHECK(all.size() == 6);
}

TEST_CASE("subgroup_generate is minimal and a fixed point") {
  FiniteGroup d4 = FiniteGroup::dihedral(4);
  for (std::vector<int> seeds : {std::vector<int>{}, {1}, {4}, {1, 4}, {2, 6}}) {
    std::vector<int> s = subgroup_generate(d4, seeds);
    CHECK(closed_under_ops(d4, s));
    CHECK(subgroup_generate(d4, s) == s);
    // minimality: no proper closed subset containing the seeds
    for (Mask drop = 1; drop < (Mask{1} << s.size()); ++drop) {
      std::vector<int> sub;
      for (std::size_t i = 0; i < s.size(); ++i)
        if (!has(drop, static_cast<int>(i))) sub.push_back(s[i]);
      bool contains_seeds = true;
      for (int x : seeds)
        if (!std::binary_search(sub.begin(), sub.end(), x)) contains_seeds = false;
      if (contains_seeds) CHECK(!closed_under_ops(d4, sub));
    }
  }
}

TEST_CASE("word_length matches the explicit-word oracle") {
  FiniteGroup z10 = FiniteGroup::cyclic(10);
  GeneratingSet gens = GeneratingSet::make(z10, {1, 9});
  CHECK(word_length(gens, 0) == 0);
  CHECK(word_length(gens, 5) == 5);
  for (int g = 0; g < 10; ++g)
    CHECK(word_length(gens, g).value() == oracle_word_length(z10, gens.elements, g));

  FiniteGroup s3 = FiniteGroup::symmetric(3);
  GeneratingSet tr = GeneratingSet::make(s3, {1, 2});
  CHECK(s3.element_order(4) == 3); // a 3-cycle
  CHECK(word_length(tr, 4) == 2);

  // outside the generated subgroup: absent
  FiniteGroup z6 = FiniteGroup::cyclic(6);
  GeneratingSet evens = GeneratingSet::make(z6, {2, 4});
  CHECK(!word_length(evens, 1).has_value());
}

TEST_CASE("word_length is subadditive") {
  FiniteGroup d5 = FiniteGroup::dihedral(5);
  GeneratingSet gens = GeneratingSet::make(d5, {1, 4, 5});
  for (int a = 0; a < d5.order(); ++a)
    for (int b = 0; b < d5.order(); ++b) {
      auto fa = word_length(gens, a), fb = word_length(gens, b);
      auto fab = word_length(gens, d5.mul(a, b));
      if (fa && fb) {
        REQUIRE(fab.has_value());
        CHECK(*fab <= *fa + *fb);
      }
    }
}

TEST_CASE("generating sets must be closed under inverses") {
  FiniteGroup z5 = FiniteGroup::cyclic(5);
  CHECK_THROWS_AS(GeneratingSet::make(z5, {1}), InputError);
  CHECK_NOTHROW(GeneratingSet::make(z5, {1, 4}));
}

TEST_CASE("bounded-size subgroup maxima grow with the seed budget") {
  FiniteGroup d4 = FiniteGroup::dihedral(4);
  auto max_order = [&](int k) {
    std::size_t best = 0;
    std::vector<int> pick;
    auto rec = [&](auto&& self, int start, int left) -> void {
      best = std::max(best, subgroup_generate(d4, pick).size());
      if (left == 0) return;
      for (int x = start; x < d4.order(); ++x) {
        pick.push_back(x);
        self(self, x + 1, left - 1);
        pick.pop_back();
      }
    };
    rec(rec, 0, k);
    return best;
  };
  CHECK(max_order(0) == 1);
  CHECK(max_order(1) == 4);       // a rotation generates the 4-cycle
  CHECK(max_order(2) == 8);       // two elements suffice for the full group
  CHECK(max_order(1) <= max_order(2));
}

TEST_CASE("enumerate_monomorphisms matches brute force") {
  FiniteGroup z2 = FiniteGroup::cyclic(2);
  FiniteGroup z3 = FiniteGroup::cyclic(3);
  FiniteGroup z4 = FiniteGroup::cyclic(4);
  FiniteGroup v4 = FiniteGroup::product(z2, z2);

  auto monos = enumerate_monomorphisms(z2, z4);
  REQUIRE(monos.size() == 1);
  CHECK(monos[0].map == std::vector<int>{0, 2}); // the order-2 element of Z4
  CHECK(enumerate_monomorphisms(z2, z3).empty());
  CHECK(enumerate_monomorphisms(z2, v4).size() == 3);

  for (auto [src, tgt] : std::vector<std::pair<FiniteGroup, FiniteGroup>>{
           {z2, z4}, {z2, v4}, {z3, FiniteGroup::symmetric(3)}, {v4, FiniteGroup::dihedral(4)}}) {
    auto got = enumerate_monomorphisms(src, tgt);
    CHECK(static_cast<int>(got.size()) == oracle_mono_count(src, tgt));
    for (const auto& m : got) CHECK(m.verify());
    CHECK(std::is_sorted(got.begin(), got.end(),
                         [](const Monomorphism& a, const Monomorphism& b) { return a.map < b.map; }));
  }
}

TEST_CASE("solves_pair finds least witnesses") {
  WordSystem sys;
  sys.arity = 1;
  sys.equalities = {{{1, false}, {1, false}}}; // x1 x1 = Id
  sys.inequalities = {{{1, false}}};           // x1 != Id

  FiniteGroup z2 = FiniteGroup::cyclic(2);
  auto w = solves_pair(z2, sys);
  REQUIRE(w.has_value());
  CHECK(*w == std::vector<int>{1});

  FiniteGroup z3 = FiniteGroup::cyclic(3);
  CHECK(!solves_pair(z3, sys).has_value());

  WordSystem never;
  never.arity = 1;
  never.inequalities = {{{1, false}, {1, true}}}; // x1 x1' != Id is impossible
  CHECK(!solves_pair(FiniteGroup::dihedral(3), never).has_value());
  CHECK(!solves_pair(z2, never).has_value());
}

TEST_CASE("solves_pair respects the search cap") {
  Limits tiny;
  tiny.search_states = 10;
  WordSystem sys;
  sys.arity = 4;
  sys.equalities = {{{1, false}}};
  CHECK_THROWS_AS(solves_pair(FiniteGroup::cyclic(6), sys, tiny), BudgetError);
}
