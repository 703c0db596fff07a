#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "wb/limits.hpp"
#include "wb/matroid.hpp"

namespace wb {

using BigInt = boost::multiprecision::cpp_int;

/// Variable sets as bitmasks; variable Z_i occupies bit i-1 (i in 1..64).
using VarSet = std::uint64_t;
inline VarSet var_bit(int i) { return VarSet{1} << (i - 1); }

enum class FormulaKind { Subset, Hyp, Count, Not, And, Exists };

/// Immutable formula tree with cached Var/Free/Bound sets and minimum
/// confinement degree. Construction enforces the formation rules:
/// count atoms need q > 1 and 0 <= p < q; an existential binds a variable
/// free in its body; conjunction demands that neither side's bound
/// variables appear free in the other.
class Formula {
public:
  static Formula subset(int i, int j, const Limits& lim = default_limits());
  static Formula hyp(int i, const Limits& lim = default_limits());
  static Formula count(int i, int p, int q, const Limits& lim = default_limits());
  static Formula negation(Formula f, const Limits& lim = default_limits());
  static Formula conjunction(Formula a, Formula b, const Limits& lim = default_limits());
  static Formula exists(int s, Formula f, const Limits& lim = default_limits());

  FormulaKind kind() const;
  VarSet vars() const;
  VarSet free() const;
  VarSet bound() const { return vars() & ~free(); }
  int min_delta() const;
  int node_count() const;
  bool is_sentence() const { return free() == 0; }
  bool delta_confined(int delta) const { return delta >= min_delta(); }

  int var_i() const;      // Subset/Hyp/Count
  int var_j() const;      // Subset
  int count_p() const;    // Count
  int count_q() const;    // Count
  int quantified() const; // Exists
  Formula child() const;  // Not/Exists
  Formula left() const;   // And
  Formula right() const;  // And

  /// Canonical concrete syntax; parse_formula round-trips it.
  std::string to_string() const;

private:
  struct Node;
  std::shared_ptr<const Node> node_;
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
};

/// Free-variable assignment: variable index -> subset mask of the ground.
using Interpretation = std::map<int, Mask>;

/// Recursive satisfaction; theta's domain must be exactly Free(f) and every
/// image must lie inside the ground set.
bool satisfies(const Hypergraph& h, const Formula& f, const Interpretation& theta);

/// Parses the concrete grammar: `~` negation, `&` conjunction,
/// `exists Zk` scoping maximally rightward, atoms `hyp(Zi)`, `Zi <= Zj`,
/// `|Zi| = p mod q`, parentheses, `#` comments. No automatic renaming:
/// rule violations are positioned errors.
Formula parse_formula(const std::string& text, const Limits& lim = default_limits());

/// The recursive upper bound on distinct registry values: count atoms give
/// (delta!)^s, hyp atoms t^s, subset atoms 2^(s^2); negation preserves,
/// conjunction multiplies, an existential exponentiates base 2.
BigInt lambda_bound(const Formula& f, int s, int t, int delta,
                    const Limits& lim = default_limits());

} // namespace wb
