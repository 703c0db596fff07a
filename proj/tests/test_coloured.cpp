#include "doctest.h"

#include "support.hpp"
#include "wb/error.hpp"

using namespace wb;
using namespace wbtest;

namespace {

ColouredSystem single_point_system(int colour_empty, int colour_full) {
  ColouredSystem s;
  s.ground = {"u"};
  s.colours = {"1", "2"};
  s.colour = {static_cast<std::uint8_t>(colour_empty), static_cast<std::uint8_t>(colour_full)};
  return s;
}

} // namespace

TEST_CASE("coloured sums follow the acceptance table") {
  ColouredSystem m = single_point_system(1, 0);
  ColouredComplement none;
  none.ground = {"v"};
  none.colours = {"1", "2"};
  none.accept = {0, 0, 0, 0};
  Hypergraph h0 = coloured_sum(m, none);
  for (Mask e = 0; e <= h0.full_mask(); ++e) CHECK(!h0.contains(e));

  // d accepts exactly the empty complement part: hyperedges are the subsets of U
  ColouredComplement empty_only;
  empty_only.ground = {"v"};
  empty_only.colours = {"1", "2"};
  empty_only.accept = {1, 1, 0, 0};
  Hypergraph h1 = coloured_sum(m, empty_only);
  for (Mask e = 0; e <= h1.full_mask(); ++e) CHECK(h1.contains(e) == ((e >> 1) == 0));

  ColouredComplement clash = none;
  clash.ground = {"u"};
  CHECK_THROWS_AS(coloured_sum(m, clash), InputError);
  ColouredComplement wrong = none;
  wrong.colours = {"1", "3"};
  CHECK_THROWS_AS(coloured_sum(m, wrong), InputError);
}

TEST_CASE("registry values at the atoms") {
  // hyp atom reads the colour of the assigned subset
  ColouredSystem s = single_point_system(1, 0); // c(∅)="2", c({u})="1"
  Formula hyp1 = Formula::hyp(1);
  RegistryValue r = registry(s, hyp1, {{1, 1}}, var_bit(1), 1);
  CHECK(r.tag() == RegistryValue::Tag::ColourTable);
  CHECK(r.table_at(1) == 0);

  // count atom stores the residue modulo delta!
  std::mt19937_64 rng(1);
  ColouredSystem s3 = random_system(rng, 3, 2);
  Formula count = Formula::count(1, 0, 2);
  RegistryValue rc = registry(s3, count, {{1, 0b111}}, var_bit(1), 2);
  CHECK(rc.tag() == RegistryValue::Tag::ResidueTable);
  CHECK(rc.table_at(1) == 1); // 3 mod 2!

  // subset atom tabulates containment over all of S
  Formula sub = Formula::subset(1, 2);
  RegistryValue rs = registry(s3, sub, {{1, 0b001}, {2, 0b011}}, var_bit(1) | var_bit(2), 1);
  CHECK(rs.tag() == RegistryValue::Tag::SubsetTable);
  CHECK(rs.subset_bit(1, 2) == 1);
  CHECK(rs.subset_bit(2, 1) == 0);
  CHECK(rs.subset_bit(1, 1) == 1);

  // the existential collects one value per subset of U
  ColouredSystem two = single_point_system(1, 0);
  Formula ex = parse_formula("exists Z1 hyp(Z1)");
  RegistryValue re = registry(two, ex, {}, var_bit(1), 1);
  CHECK(re.tag() == RegistryValue::Tag::FinSet);
  CHECK(re.members().size() == 2);

  ColouredSystem constant = single_point_system(1, 1); // c ≡ "2"
  RegistryValue rconst = registry(constant, ex, {}, var_bit(1), 1);
  CHECK(rconst.members().size() == 1);
  CHECK(re != rconst);
}

TEST_CASE("registry preconditions") {
  ColouredSystem s = single_point_system(0, 1);
  Formula hyp1 = Formula::hyp(1);
  CHECK_THROWS_AS(registry(s, hyp1, {}, var_bit(1), 1), InputError);          // sigma domain
  CHECK_THROWS_AS(registry(s, hyp1, {{1, 0}}, var_bit(2), 1), InputError);    // S misses Var
  CHECK_THROWS_AS(registry(s, Formula::count(1, 0, 3), {{1, 0}}, var_bit(1), 2), InputError);
}

TEST_CASE("sympathy matches satisfaction of the sum") {
  std::mt19937_64 rng(1234);
  int checked = 0;
  while (checked < 150) {
    int usz = rnd(rng, 0, 3), vsz = rnd(rng, 0, 3), csz = rnd(rng, 1, 3);
    ColouredSystem m = random_system(rng, usz, csz);
    ColouredComplement pi = random_complement(rng, vsz, csz);
    Formula f = random_formula(rng, rnd(rng, 1, 5), 3, 2);
    Interpretation sigma = random_interpretation(rng, f.free(), m.full_mask());
    Interpretation tau = random_interpretation(rng, f.free(), pi.full_mask());

    RegistryValue r = registry(m, f, sigma, f.vars(), 2);
    bool sym = sympathetic(r, f, pi, tau, f.vars(), 2);

    Hypergraph sum = coloured_sum(m, pi);
    Interpretation theta;
    for (auto [v, mask] : sigma) theta[v] = mask | (tau.at(v) << m.size());
    bool sat = satisfies(sum, f, theta);
    CHECK(sym == sat);
    ++checked;
  }
}

TEST_CASE("negation flips sympathy") {
  std::mt19937_64 rng(77);
  ColouredSystem m = random_system(rng, 2, 2);
  ColouredComplement pi = random_complement(rng, 2, 2);
  Formula f = parse_formula("hyp(Z1)");
  Formula nf = Formula::negation(f);
  for (Mask x = 0; x <= m.full_mask(); ++x)
    for (Mask y = 0; y <= pi.full_mask(); ++y) {
      RegistryValue r = registry(m, f, {{1, x}}, var_bit(1), 1);
      RegistryValue rn = registry(m, nf, {{1, x}}, var_bit(1), 1);
      CHECK(r == rn); // negation keeps the registry
      CHECK(sympathetic(r, f, pi, {{1, y}}, var_bit(1), 1) !=
            sympathetic(rn, nf, pi, {{1, y}}, var_bit(1), 1));
    }
}

TEST_CASE("registry equality is a label congruence") {
  std::mt19937_64 rng(555);
  Formula f = parse_formula("exists Z1 (hyp(Z1) & |Z1| = 1 mod 2)");
  for (int trial = 0; trial < 20; ++trial) {
    ColouredSystem s = random_system(rng, 3, 2);
    ColouredSystem permuted = s;
    // transport along the label permutation u1->u2->u3->u1
    permuted.ground = {"u3", "u1", "u2"};
    for (Mask x = 0; x <= s.full_mask(); ++x) {
      // bit i of the new table is old bit (i+2)%3 ... recompute directly:
      Mask old = 0;
      // new position j holds old label: j0="u3"->old2, j1="u1"->old0, j2="u2"->old1
      if (has(x, 0)) old |= bit(2);
      if (has(x, 1)) old |= bit(0);
      if (has(x, 2)) old |= bit(1);
      permuted.colour[static_cast<std::size_t>(x)] = s.colour[static_cast<std::size_t>(old)];
    }
    CHECK(registry(s, f, {}, f.vars(), 2) == registry(permuted, f, {}, f.vars(), 2));
  }
}

TEST_CASE("classification groups systems by registry") {
  Formula f = parse_formula("exists Z1 hyp(Z1)");

  ColouredSystem a = single_point_system(1, 0);
  ColouredSystem b = a;
  b.ground = {"w"}; // label-isomorphic copy
  ColouredSystem c = single_point_system(1, 1);
  auto cls = classify_systems({a, b, c}, f, 1);
  REQUIRE(cls.classes.size() == 2);
  CHECK(cls.values[0] == cls.values[1]);
  CHECK(cls.values[0] != cls.values[2]);

  // exhaustive enumeration of the sixteen two-point systems
  std::vector<ColouredSystem> all;
  for (int code = 0; code < 16; ++code) {
    ColouredSystem s;
    s.ground = {"u1", "u2"};
    s.colours = {"1", "2"};
    for (int i = 0; i < 4; ++i) s.colour.push_back(static_cast<std::uint8_t>((code >> i) & 1));
    all.push_back(std::move(s));
  }
  auto big = classify_systems(all, f, 1);
  CHECK(BigInt(static_cast<int>(big.classes.size())) <= big.bound);
  CHECK(big.bound == 4); // 2^(t^s) with one variable and two colours
}

TEST_CASE("cleft search finds the empty-ground separation") {
  ColouredSystem m1, m2;
  m1.ground = {};
  m1.colours = {"1", "2"};
  m1.colour = {0};
  m2 = m1;
  m2.colour = {1};
  Formula f = parse_formula("exists Z1 hyp(Z1)");

  auto none = cleft_search(m1, m1, f, {}, {}, 2);
  CHECK(!none.has_value());

  auto hit = cleft_search(m1, m2, f, {}, {}, 2);
  REQUIRE(hit.has_value());
  CHECK(hit->complement.ground.empty());
  CHECK(hit->complement.accepts(0, 0) == 1);
  CHECK(hit->complement.accepts(0, 1) == 0);
  CHECK(hit->satisfied_side == 1);
}

TEST_CASE("equal registries admit no cleft") {
  std::mt19937_64 rng(4321);
  Formula f = parse_formula("exists Z1 hyp(Z1)");
  int pairs = 0;
  while (pairs < 10) {
    ColouredSystem a = random_system(rng, rnd(rng, 0, 2), 2);
    ColouredSystem b = random_system(rng, rnd(rng, 0, 2), 2);
    if (!(registry(a, f, {}, f.vars(), 1) == registry(b, f, {}, f.vars(), 1))) continue;
    CHECK(!cleft_search(a, b, f, {}, {}, 2).has_value());
    ++pairs;
  }
}

TEST_CASE("cleft search parallel scan returns the serial answer") {
  std::mt19937_64 rng(86);
  Formula f = parse_formula("exists Z1 (hyp(Z1) & |Z1| = 1 mod 2)");
  for (int trial = 0; trial < 6; ++trial) {
    ColouredSystem a = random_system(rng, 2, 2);
    ColouredSystem b = random_system(rng, 2, 2);
    auto serial = cleft_search(a, b, f, {}, {}, 1, default_limits(), 1);
    auto parallel = cleft_search(a, b, f, {}, {}, 1, default_limits(), 4);
    CHECK(serial.has_value() == parallel.has_value());
    if (serial && parallel) {
      CHECK(serial->complement.accept == parallel->complement.accept);
      CHECK(serial->tau == parallel->tau);
    }
  }
}

TEST_CASE("basic encoder colours dependents 1 and independents 2") {
  Matroid u12 = uniform_matroid(1, {"a", "b"});
  ColouredSystem s = encode_basic(u12);
  CHECK(s.colours == std::vector<std::string>{"1", "2"});
  CHECK(s.colour[0b11] == 0);
  CHECK(s.colour[0b01] == 1);
}

TEST_CASE("direct-sum encoders reproduce the matroidal direct sum") {
  Matroid m = uniform_matroid(1, {"a", "b"});
  Matroid n = uniform_matroid(2, {"c", "d", "e"});
  Hypergraph sum = coloured_sum(encode_basic(m), encode_direct_sum_complement(n));
  CHECK(sum == direct_sum(m, n).independence_hypergraph());
}

TEST_CASE("two-sum encoders match the circuit oracle") {
  Matroid m = uniform_matroid(2, {"a", "b", "p"});
  Matroid n = uniform_matroid(2, {"c", "d", "p"});
  Hypergraph sum = coloured_sum(encode_two_sum_system(m, "p"), encode_two_sum_complement(n, "p"));
  Matroid oracle = two_sum_oracle(m, n, "p");
  CHECK(sum == oracle.independence_hypergraph());

  // a second pair with parallel elements on one side
  Matroid m2 = matroid_from_circuits({"a", "b", "p"}, {0b101}); // a parallel to p
  CHECK_THROWS_AS(encode_two_sum_system(m2, "b"), InputError);  // b is a coloop there
  std::mt19937_64 rng(2211);
  for (int trial = 0; trial < 10; ++trial) {
    AmalgamPair pair = random_amalgam_pair(rng, 3);
    // reuse the generator: glue over a single shared point instead
    Matroid left = pair.m1;
    Matroid right = pair.m2;
    int p_left = left.label_index("l1");
    int p_right = right.label_index("l1");
    Mask keep_left = left.full_mask() & ~bit(left.label_index("l2"));
    Mask keep_right = right.full_mask() & ~bit(right.label_index("l2"));
    if (pair.base.size() == 3) {
      keep_left &= ~bit(left.label_index("l3"));
      keep_right &= ~bit(right.label_index("l3"));
    }
    Matroid ml = restriction(left, keep_left);
    Matroid mr = restriction(right, keep_right);
    p_left = ml.label_index("l1");
    p_right = mr.label_index("l1");
    // the basepoint must be neither a loop nor a coloop on both sides
    if (ml.rank(bit(p_left)) == 0 || mr.rank(bit(p_right)) == 0) continue;
    if (ml.rank(ml.full_mask() & ~bit(p_left)) < ml.rank()) continue;
    if (mr.rank(mr.full_mask() & ~bit(p_right)) < mr.rank()) continue;
    Hypergraph got =
        coloured_sum(encode_two_sum_system(ml, "l1"), encode_two_sum_complement(mr, "l1"));
    CHECK(got == two_sum_oracle(ml, mr, "l1").independence_hypergraph());
  }
}

TEST_CASE("amalgam encoders reproduce the proper amalgam") {
  // the worked pair of triangles
  Matroid m1 = uniform_matroid(2, {"a", "b", "c"});
  Matroid m2 = uniform_matroid(2, {"a", "b", "d"});
  std::vector<std::string> base = {"a", "b"};
  Hypergraph sum = coloured_sum(encode_amalgam_side(m1, base), encode_amalgam_complement(m2, base));
  CHECK(sum == proper_amalgam(m1, m2).independence_hypergraph());

  std::mt19937_64 rng(31415);
  for (int trial = 0; trial < 30; ++trial) {
    AmalgamPair pair = random_amalgam_pair(rng, 3);
    Hypergraph got = coloured_sum(encode_amalgam_side(pair.m1, pair.base),
                                  encode_amalgam_complement(pair.m2, pair.base));
    CHECK(got == proper_amalgam(pair.m1, pair.m2).independence_hypergraph());
  }
}
