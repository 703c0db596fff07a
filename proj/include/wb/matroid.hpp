#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "wb/limits.hpp"
#include "wb/subset.hpp"

namespace wb {

/// Finite ground set plus an arbitrary family of subsets, stored as a
/// complete predicate table indexed by subset mask.
struct Hypergraph {
  std::vector<std::string> ground;
  std::vector<std::uint8_t> member; // size 2^|ground|

  int size() const { return static_cast<int>(ground.size()); }
  Mask full_mask() const { return bit(size()) - 1; }
  bool contains(Mask m) const { return member[static_cast<std::size_t>(m)] != 0; }
  int label_index(const std::string& l) const;

  static Hypergraph empty_family(std::vector<std::string> ground);
  void check_shape(const Limits& lim = default_limits()) const;

  bool operator==(const Hypergraph&) const = default;
};

/// A hypergraph whose family satisfies the independence axioms, with a
/// cached rank table. Construct through validate_matroid or the builders.
class Matroid {
public:
  /// Default-constructs the matroid on the empty ground set.
  Matroid() : indep_{1}, rank_{0} {}

  const std::vector<std::string>& ground() const { return ground_; }
  int size() const { return static_cast<int>(ground_.size()); }
  Mask full_mask() const { return bit(size()) - 1; }
  int label_index(const std::string& l) const;

  bool independent(Mask m) const { return indep_[static_cast<std::size_t>(m)] != 0; }
  int rank(Mask m) const { return rank_[static_cast<std::size_t>(m)]; }
  int rank() const { return rank_[static_cast<std::size_t>(full_mask())]; }
  Mask closure(Mask m) const;
  bool is_loop(int e) const { return rank(bit(e)) == 0; }

  Hypergraph independence_hypergraph() const;
  const std::vector<std::uint8_t>& independence_table() const { return indep_; }

  /// Equality is ground-label lists plus identical independence tables.
  bool operator==(const Matroid& o) const {
    return ground_ == o.ground_ && indep_ == o.indep_;
  }

  /// Skips the axiom checks; caller guarantees a valid family.
  static Matroid from_valid_family(std::vector<std::string> ground,
                                   std::vector<std::uint8_t> indep);

private:
  std::vector<std::string> ground_;
  std::vector<std::uint8_t> indep_;
  std::vector<std::uint8_t> rank_;
};

struct AxiomViolation {
  enum class Kind { EmptyFamily, NotDownwardClosed, AugmentationFails };
  Kind kind;
  Mask witness_small = 0; // missing subset / the set I
  Mask witness_large = 0; // its superset / the set J
  std::string message;
};

using MatroidOrViolation = std::variant<Matroid, AxiomViolation>;

/// Full axiom check: non-empty, downward closed, augmentation.
MatroidOrViolation validate_matroid(const Hypergraph& h, const Limits& lim = default_limits());
/// Throwing wrapper.
Matroid require_matroid(const Hypergraph& h, const Limits& lim = default_limits());

struct RankClosure {
  int rank = 0;
  Mask closure = 0;
};
RankClosure rank_closure(const Matroid& m, Mask x);

struct CircuitsLines {
  std::vector<Mask> circuits;   // minimal dependent sets
  std::vector<Mask> long_lines; // rank-2 flats with >= 4 rank-1 subflats
};
CircuitsLines circuits_lines(const Matroid& m);

std::vector<Mask> circuits_of(const Matroid& m);
std::vector<Mask> flats_of(const Matroid& m);
/// r(F)+r(F') = r(F∩F')+r(F∪F') over all flat pairs.
bool is_modular(const Matroid& m);
/// Disjoint X, Y with r(X)+r(Y) = r(X∪Y).
bool skew(const Matroid& m, Mask x, Mask y);

Matroid restriction(const Matroid& m, Mask x);
Matroid direct_sum(const Matroid& a, const Matroid& b, const Limits& lim = default_limits());

Matroid uniform_matroid(int rank, std::vector<std::string> ground);

/// Independence = containing none of the given sets; validates the axioms.
Matroid matroid_from_circuits(std::vector<std::string> ground, const std::vector<Mask>& circuits,
                              const Limits& lim = default_limits());

/// PG(2,p): the rank-3 matroid of the p^2+p+1 projective points over GF(p).
Matroid projective_plane(int p, const Limits& lim = default_limits());

/// Proper amalgam over the shared ground labels; requires equal restrictions
/// to the base and a modular base matroid. Rank of X is the minimum of
/// r1(Y∩E1)+r2(Y∩E2)−rN(Y∩l) over supersets Y of X.
Matroid proper_amalgam(const Matroid& m1, const Matroid& m2, const Limits& lim = default_limits());

enum class DependenceCase { SideDependence, CaseI, CaseII, CaseIII, None };

struct DependenceVerdict {
  bool dependent = false;
  DependenceCase which = DependenceCase::None;
};

/// The rank-2-base case split for amalgam dependence: side dependence, or
/// one of the three span/skew conditions. X is over the union ground in the
/// same label order proper_amalgam uses.
DependenceVerdict dependence_cases(const Matroid& m1, const Matroid& m2, Mask x);

/// Ground label order shared by proper_amalgam and dependence_cases:
/// E1's labels, then E2's new labels in E2 order.
std::vector<std::string> amalgam_ground(const Matroid& m1, const Matroid& m2);

} // namespace wb
