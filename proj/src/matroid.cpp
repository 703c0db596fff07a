#include "wb/matroid.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <set>

#include "wb/error.hpp"

namespace wb {

namespace {

void check_ground_size(int n, const Limits& lim, const char* who) {
  if (n > lim.matroid_ground_max)
    throw BudgetError(std::string(who) + ": ground set larger than cap (" +
                      std::to_string(n) + " > " + std::to_string(lim.matroid_ground_max) + ")");
}

void check_unique_labels(const std::vector<std::string>& labels, const char* who) {
  std::set<std::string> s(labels.begin(), labels.end());
  if (s.size() != labels.size()) throw InputError(std::string(who) + ": duplicate ground labels");
}

std::vector<std::uint8_t> rank_table_from(const std::vector<std::uint8_t>& indep, int n) {
  std::vector<std::uint8_t> rank(std::size_t{1} << n, 0);
  for (Mask x = 1; x <= (bit(n) - 1) && n > 0; ++x) {
    if (indep[static_cast<std::size_t>(x)]) {
      rank[static_cast<std::size_t>(x)] = static_cast<std::uint8_t>(popcount(x));
    } else {
      std::uint8_t best = 0;
      for_each_bit(x, [&](int e) {
        best = std::max(best, rank[static_cast<std::size_t>(x & ~bit(e))]);
      });
      rank[static_cast<std::size_t>(x)] = best;
    }
  }
  return rank;
}

} // namespace

int Hypergraph::label_index(const std::string& l) const {
  for (int i = 0; i < size(); ++i)
    if (ground[static_cast<std::size_t>(i)] == l) return i;
  return -1;
}

Hypergraph Hypergraph::empty_family(std::vector<std::string> g) {
  Hypergraph h;
  h.ground = std::move(g);
  h.member.assign(std::size_t{1} << h.size(), 0);
  return h;
}

void Hypergraph::check_shape(const Limits& lim) const {
  check_ground_size(size(), lim, "hypergraph");
  check_unique_labels(ground, "hypergraph");
  if (member.size() != (std::size_t{1} << size()))
    throw InputError("hypergraph: predicate table must cover all 2^n subsets");
}

int Matroid::label_index(const std::string& l) const {
  for (int i = 0; i < size(); ++i)
    if (ground_[static_cast<std::size_t>(i)] == l) return i;
  return -1;
}

Mask Matroid::closure(Mask m) const {
  int r = rank(m);
  Mask out = m;
  for (int e = 0; e < size(); ++e)
    if (!has(m, e) && rank(m | bit(e)) == r) out |= bit(e);
  return out;
}

Hypergraph Matroid::independence_hypergraph() const {
  Hypergraph h;
  h.ground = ground_;
  h.member = indep_;
  return h;
}

Matroid Matroid::from_valid_family(std::vector<std::string> ground,
                                   std::vector<std::uint8_t> indep) {
  Matroid m;
  m.ground_ = std::move(ground);
  m.indep_ = std::move(indep);
  m.rank_ = rank_table_from(m.indep_, m.size());
  return m;
}

MatroidOrViolation validate_matroid(const Hypergraph& h, const Limits& lim) {
  h.check_shape(lim);
  int n = h.size();
  const auto& fam = h.member;

  bool any = false;
  for (auto v : fam)
    if (v) {
      any = true;
      break;
    }
  if (!any)
    return AxiomViolation{AxiomViolation::Kind::EmptyFamily, 0, 0, "the family has no members"};

  for (Mask x = 0; x <= h.full_mask(); ++x) {
    if (!fam[static_cast<std::size_t>(x)]) continue;
    bool bad = false;
    Mask missing = 0;
    for (int e = n; e-- > 0;) {
      if (!has(x, e)) continue;
      Mask y = x & ~bit(e);
      if (!fam[static_cast<std::size_t>(y)]) {
        bad = true;
        missing = y;
        break;
      }
    }
    if (bad)
      return AxiomViolation{AxiomViolation::Kind::NotDownwardClosed, missing, x,
                            "member " + mask_to_string(x, h.ground) + " has non-member subset " +
                                mask_to_string(missing, h.ground)};
  }
  // downward closure plus a member implies the empty set is a member

  std::vector<std::uint8_t> rank = rank_table_from(fam, n);
  std::uint64_t work = (std::uint64_t{1} << n) * static_cast<std::uint64_t>(std::max(n, 1));
  if (work > lim.axiom_pairs_max) throw BudgetError("validate_matroid: axiom-check work cap exceeded");
  for (Mask i = 0; i <= h.full_mask(); ++i) {
    if (!fam[static_cast<std::size_t>(i)]) continue;
    Mask blocked = i;
    for (int e = 0; e < n; ++e)
      if (!has(i, e) && !fam[static_cast<std::size_t>(i | bit(e))]) blocked |= bit(e);
    int k = popcount(i);
    if (rank[static_cast<std::size_t>(blocked)] > k) {
      // a larger independent set lives inside the blocked elements
      Mask j = 0;
      for_each_submask(blocked, [&](Mask s) {
        if (j == 0 && popcount(s) == k + 1 && fam[static_cast<std::size_t>(s)]) j = s;
      });
      return AxiomViolation{AxiomViolation::Kind::AugmentationFails, i, j,
                            "no element of " + mask_to_string(j, h.ground) + " augments " +
                                mask_to_string(i, h.ground)};
    }
  }
  return Matroid::from_valid_family(h.ground, h.member);
}

Matroid require_matroid(const Hypergraph& h, const Limits& lim) {
  auto res = validate_matroid(h, lim);
  if (auto* v = std::get_if<AxiomViolation>(&res))
    throw InputError("not a matroid: " + v->message);
  return std::get<Matroid>(std::move(res));
}

RankClosure rank_closure(const Matroid& m, Mask x) {
  if (x & ~m.full_mask()) throw InputError("rank_closure: subset out of range");
  return RankClosure{m.rank(x), m.closure(x)};
}

std::vector<Mask> circuits_of(const Matroid& m) {
  std::vector<Mask> out;
  for (Mask x = 1; x <= m.full_mask() && m.size() > 0; ++x) {
    if (m.independent(x)) continue;
    bool minimal = true;
    for_each_bit(x, [&](int e) {
      if (minimal && !m.independent(x & ~bit(e))) minimal = false;
    });
    if (minimal) out.push_back(x);
  }
  std::sort(out.begin(), out.end(), [&](Mask a, Mask b) {
    int pa = popcount(a), pb = popcount(b);
    if (pa != pb) return pa < pb;
    return a < b;
  });
  return out;
}

std::vector<Mask> flats_of(const Matroid& m) {
  std::vector<Mask> out;
  for (Mask x = 0; x <= m.full_mask(); ++x) {
    int r = m.rank(x);
    bool flat = true;
    for (int e = 0; e < m.size() && flat; ++e)
      if (!has(x, e) && m.rank(x | bit(e)) == r) flat = false;
    if (flat) out.push_back(x);
    if (m.size() == 0) break;
  }
  return out;
}

CircuitsLines circuits_lines(const Matroid& m) {
  CircuitsLines out;
  out.circuits = circuits_of(m);
  std::vector<Mask> flats = flats_of(m);
  std::vector<Mask> points; // rank-1 flats
  for (Mask f : flats)
    if (m.rank(f) == 1) points.push_back(f);
  for (Mask f : flats) {
    if (m.rank(f) != 2) continue;
    int count = 0;
    for (Mask p : points)
      if ((p & f) == p) ++count;
    if (count >= 4) out.long_lines.push_back(f);
  }
  std::sort(out.long_lines.begin(), out.long_lines.end(), [&](Mask a, Mask b) {
    int pa = popcount(a), pb = popcount(b);
    if (pa != pb) return pa < pb;
    return a < b;
  });
  return out;
}

bool is_modular(const Matroid& m) {
  std::vector<Mask> flats = flats_of(m);
  for (std::size_t i = 0; i < flats.size(); ++i)
    for (std::size_t j = i + 1; j < flats.size(); ++j) {
      Mask f = flats[i], g = flats[j];
      if (m.rank(f) + m.rank(g) != m.rank(f & g) + m.rank(f | g)) return false;
    }
  return true;
}

bool skew(const Matroid& m, Mask x, Mask y) {
  if (x & y) throw InputError("skew: sets must be disjoint");
  return m.rank(x) + m.rank(y) == m.rank(x | y);
}

namespace {

// Restriction with the new ground exactly `labels`, in that order.
Matroid restriction_ordered(const Matroid& m, const std::vector<std::string>& labels) {
  std::vector<int> pos;
  for (const auto& l : labels) {
    int i = m.label_index(l);
    if (i < 0) throw InputError("restriction: unknown label " + l);
    pos.push_back(i);
  }
  int k = static_cast<int>(labels.size());
  std::vector<std::uint8_t> indep(std::size_t{1} << k);
  for (Mask s = 0; s < (Mask{1} << k); ++s) {
    Mask old = 0;
    for_each_bit(s, [&](int b) { old |= bit(pos[static_cast<std::size_t>(b)]); });
    indep[static_cast<std::size_t>(s)] = m.independent(old) ? 1 : 0;
  }
  return Matroid::from_valid_family(labels, std::move(indep));
}

} // namespace

Matroid restriction(const Matroid& m, Mask x) {
  if (x & ~m.full_mask()) throw InputError("restriction: subset out of range");
  std::vector<std::string> labels;
  for_each_bit(x, [&](int e) { labels.push_back(m.ground()[static_cast<std::size_t>(e)]); });
  return restriction_ordered(m, labels);
}

Matroid direct_sum(const Matroid& a, const Matroid& b, const Limits& lim) {
  for (const auto& l : b.ground())
    if (a.label_index(l) >= 0) throw InputError("direct_sum: grounds overlap at " + l);
  int n = a.size() + b.size();
  check_ground_size(n, lim, "direct_sum");
  std::vector<std::string> ground = a.ground();
  ground.insert(ground.end(), b.ground().begin(), b.ground().end());
  std::vector<std::uint8_t> indep(std::size_t{1} << n);
  Mask amask = a.full_mask();
  for (Mask x = 0; x < (Mask{1} << n); ++x)
    indep[static_cast<std::size_t>(x)] =
        (a.independent(x & amask) && b.independent(x >> a.size())) ? 1 : 0;
  return Matroid::from_valid_family(std::move(ground), std::move(indep));
}

Matroid uniform_matroid(int rank, std::vector<std::string> ground) {
  int n = static_cast<int>(ground.size());
  check_unique_labels(ground, "uniform_matroid");
  std::vector<std::uint8_t> indep(std::size_t{1} << n);
  for (Mask x = 0; x < (Mask{1} << n); ++x)
    indep[static_cast<std::size_t>(x)] = popcount(x) <= rank ? 1 : 0;
  return Matroid::from_valid_family(std::move(ground), std::move(indep));
}

Matroid matroid_from_circuits(std::vector<std::string> ground, const std::vector<Mask>& circuits,
                              const Limits& lim) {
  int n = static_cast<int>(ground.size());
  check_ground_size(n, lim, "matroid_from_circuits");
  check_unique_labels(ground, "matroid_from_circuits");
  std::size_t total = std::size_t{1} << n;
  std::vector<std::uint8_t> dep(total, 0);
  for (Mask c : circuits) {
    if (c & ~(bit(n) - 1)) throw InputError("matroid_from_circuits: circuit out of range");
    dep[static_cast<std::size_t>(c)] = 1;
  }
  for (int i = 0; i < n; ++i)
    for (Mask x = 0; x < total; ++x)
      if (!has(x, i) && dep[static_cast<std::size_t>(x)]) dep[static_cast<std::size_t>(x | bit(i))] = 1;
  Hypergraph h;
  h.ground = std::move(ground);
  h.member.resize(total);
  for (Mask x = 0; x < total; ++x)
    h.member[static_cast<std::size_t>(x)] = dep[static_cast<std::size_t>(x)] ? 0 : 1;
  return require_matroid(h, lim);
}

Matroid projective_plane(int p, const Limits& lim) {
  if (p < 2) throw InputError("projective_plane: p must be a prime");
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) throw InputError("projective_plane: " + std::to_string(p) + " is not prime");
  int n = p * p + p + 1;
  check_ground_size(n, lim, "projective_plane");

  // canonical homogeneous representatives: (1,y,z), (0,1,z), (0,0,1)
  std::vector<std::array<int, 3>> pts;
  for (int y = 0; y < p; ++y)
    for (int z = 0; z < p; ++z) pts.push_back({1, y, z});
  for (int z = 0; z < p; ++z) pts.push_back({0, 1, z});
  pts.push_back({0, 0, 1});

  std::vector<std::string> ground;
  for (int i = 0; i < n; ++i) ground.push_back("p" + std::to_string(i));

  auto det3 = [&](int a, int b, int c) {
    const auto &A = pts[static_cast<std::size_t>(a)], &B = pts[static_cast<std::size_t>(b)],
               &C = pts[static_cast<std::size_t>(c)];
    long d = static_cast<long>(A[0]) * (B[1] * C[2] - B[2] * C[1]) -
             static_cast<long>(A[1]) * (B[0] * C[2] - B[2] * C[0]) +
             static_cast<long>(A[2]) * (B[0] * C[1] - B[1] * C[0]);
    return ((d % p) + p) % p;
  };

  std::vector<std::uint8_t> indep(std::size_t{1} << n, 0);
  for (Mask x = 0; x < (Mask{1} << n); ++x) {
    int k = popcount(x);
    if (k > 3) continue; // rank 3
    if (k <= 2) {
      indep[static_cast<std::size_t>(x)] = 1; // distinct projective points are never parallel
    } else {
      std::vector<int> e = bits_of(x);
      indep[static_cast<std::size_t>(x)] = det3(e[0], e[1], e[2]) != 0 ? 1 : 0;
    }
  }
  return Matroid::from_valid_family(std::move(ground), std::move(indep));
}

std::vector<std::string> amalgam_ground(const Matroid& m1, const Matroid& m2) {
  std::vector<std::string> ground = m1.ground();
  for (const auto& l : m2.ground())
    if (m1.label_index(l) < 0) ground.push_back(l);
  return ground;
}

namespace {

struct AmalgamFrame {
  std::vector<std::string> ground;   // union labels
  std::vector<std::string> base;     // shared labels, in m1 order
  Matroid base_matroid;              // N = M1|l = M2|l, ground order = base
  std::vector<int> to1, to2, toN;    // union position -> side position or -1
  int n = 0;

  Mask proj(Mask x, const std::vector<int>& to) const {
    Mask out = 0;
    for_each_bit(x, [&](int i) {
      int j = to[static_cast<std::size_t>(i)];
      if (j >= 0) out |= bit(j);
    });
    return out;
  }
};

AmalgamFrame make_frame(const Matroid& m1, const Matroid& m2, const Limits& lim, const char* who) {
  AmalgamFrame f;
  f.ground = amalgam_ground(m1, m2);
  f.n = static_cast<int>(f.ground.size());
  check_ground_size(f.n, lim, who);
  for (const auto& l : m1.ground())
    if (m2.label_index(l) >= 0) f.base.push_back(l);

  Matroid n1 = restriction_ordered(m1, f.base);
  Matroid n2 = restriction_ordered(m2, f.base);
  if (!(n1 == n2)) throw InputError(std::string(who) + ": the two restrictions to the base differ");
  f.base_matroid = std::move(n1);

  for (const auto& l : f.ground) {
    f.to1.push_back(m1.label_index(l));
    f.to2.push_back(m2.label_index(l));
    int bi = -1;
    for (int k = 0; k < static_cast<int>(f.base.size()); ++k)
      if (f.base[static_cast<std::size_t>(k)] == l) bi = k;
    f.toN.push_back(bi);
  }
  return f;
}

} // namespace

Matroid proper_amalgam(const Matroid& m1, const Matroid& m2, const Limits& lim) {
  AmalgamFrame f = make_frame(m1, m2, lim, "proper_amalgam");
  if (!is_modular(f.base_matroid))
    throw InputError("proper_amalgam: the shared restriction is not modular");

  std::size_t total = std::size_t{1} << f.n;
  std::vector<std::uint8_t> rank(total);
  // g(Y) = r1(Y∩E1) + r2(Y∩E2) − rN(Y∩l), then min over supersets
  for (Mask y = 0; y < total; ++y) {
    int g = m1.rank(f.proj(y, f.to1)) + m2.rank(f.proj(y, f.to2)) -
            f.base_matroid.rank(f.proj(y, f.toN));
    rank[static_cast<std::size_t>(y)] = static_cast<std::uint8_t>(g);
  }
  for (int i = 0; i < f.n; ++i)
    for (Mask y = 0; y < total; ++y)
      if (!has(y, i))
        rank[static_cast<std::size_t>(y)] =
            std::min(rank[static_cast<std::size_t>(y)], rank[static_cast<std::size_t>(y | bit(i))]);

  std::vector<std::uint8_t> indep(total);
  for (Mask y = 0; y < total; ++y)
    indep[static_cast<std::size_t>(y)] = rank[static_cast<std::size_t>(y)] == popcount(y) ? 1 : 0;

  Hypergraph h;
  h.ground = f.ground;
  h.member = std::move(indep);
  auto res = validate_matroid(h, lim);
  if (auto* v = std::get_if<AxiomViolation>(&res))
    throw InputError("proper_amalgam: result violates the matroid axioms: " + v->message);
  Matroid out = std::get<Matroid>(std::move(res));

  // the amalgam property: restrictions reproduce the inputs
  if (!(restriction_ordered(out, m1.ground()) == m1) ||
      !(restriction_ordered(out, m2.ground()) == m2))
    throw InputError("proper_amalgam: restrictions do not reproduce the inputs");
  return out;
}

DependenceVerdict dependence_cases(const Matroid& m1, const Matroid& m2, Mask x) {
  const Limits& lim = default_limits();
  AmalgamFrame f = make_frame(m1, m2, lim, "dependence_cases");
  Mask base_in_1 = 0, base_in_2 = 0;
  for (int i = 0; i < f.n; ++i)
    if (f.toN[static_cast<std::size_t>(i)] >= 0) {
      base_in_1 |= bit(f.to1[static_cast<std::size_t>(i)]);
      base_in_2 |= bit(f.to2[static_cast<std::size_t>(i)]);
    }
  if (m1.rank(base_in_1) != 2)
    throw InputError("dependence_cases: the base must have rank 2");
  if (x & ~(bit(f.n) - 1)) throw InputError("dependence_cases: subset out of range");

  Mask x1 = f.proj(x, f.to1); // X ∩ E1
  Mask x2 = f.proj(x, f.to2); // X ∩ E2
  Mask only2 = 0, only1 = 0;  // X − E1 (as m2 mask), X − E2 (as m1 mask)
  for_each_bit(x, [&](int i) {
    if (f.to1[static_cast<std::size_t>(i)] < 0) only2 |= bit(f.to2[static_cast<std::size_t>(i)]);
    if (f.to2[static_cast<std::size_t>(i)] < 0) only1 |= bit(f.to1[static_cast<std::size_t>(i)]);
  });

  if (!m1.independent(x1) || !m2.independent(x2))
    return DependenceVerdict{true, DependenceCase::SideDependence};

  // X − E1 and the base are disjoint (the base lies inside E1), likewise on
  // the other side, so the skew tests are well-formed.
  Mask cl1 = m1.closure(x1);
  if ((cl1 & base_in_1) == base_in_1 && !skew(m2, only2, base_in_2))
    return DependenceVerdict{true, DependenceCase::CaseI};

  Mask cl2 = m2.closure(x2);
  if ((cl2 & base_in_2) == base_in_2 && !skew(m1, only1, base_in_1))
    return DependenceVerdict{true, DependenceCase::CaseII};

  Mask cl_only1 = m1.closure(only1); // cl1(X − E2)
  Mask cl_only2 = m2.closure(only2); // cl2(X − E1)
  for (int k = 0; k < static_cast<int>(f.base.size()); ++k) {
    int e1 = m1.label_index(f.base[static_cast<std::size_t>(k)]);
    int e2 = m2.label_index(f.base[static_cast<std::size_t>(k)]);
    if (has(cl_only1, e1) && has(cl_only2, e2) && m1.rank(bit(e1)) == 1)
      return DependenceVerdict{true, DependenceCase::CaseIII};
  }
  return DependenceVerdict{false, DependenceCase::None};
}

} // namespace wb
