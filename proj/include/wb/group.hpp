#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wb/limits.hpp"

namespace wb {

/// A finite group as an explicit multiplication table over indexed elements.
/// Index 0 is always the identity. Two groups are equal values only if their
/// tables and names coincide; isomorphism questions go through
/// enumerate_monomorphisms.
class FiniteGroup {
public:
  /// Default-constructs the order-1 trivial group.
  FiniteGroup() : order_(1), table_{0}, names_{"Id"}, inverse_{0} {}

  /// Validates identity row/column, the Latin-square property, and (up to
  /// lim.assoc_check_max) associativity.
  static FiniteGroup from_table(std::vector<std::string> names,
                                std::vector<int> table,
                                const Limits& lim = default_limits());

  static FiniteGroup cyclic(int n);
  static FiniteGroup dihedral(int n);
  static FiniteGroup symmetric(int n); // n <= 5
  static FiniteGroup product(const FiniteGroup& a, const FiniteGroup& b);

  int order() const { return order_; }
  int identity() const { return 0; }
  int mul(int g, int h) const { return table_[static_cast<std::size_t>(g) * order_ + h]; }
  int inv(int g) const { return inverse_[static_cast<std::size_t>(g)]; }
  int element_order(int g) const;

  const std::string& name(int g) const { return names_[static_cast<std::size_t>(g)]; }
  const std::vector<std::string>& names() const { return names_; }
  /// Index of the named element, or -1.
  int index_of(const std::string& name) const;

  const std::vector<int>& table() const { return table_; }
  bool operator==(const FiniteGroup& o) const {
    return table_ == o.table_ && names_ == o.names_;
  }

private:
  struct Raw {};
  explicit FiniteGroup(Raw) {}
  int order_ = 0;
  std::vector<int> table_;
  std::vector<std::string> names_;
  std::vector<int> inverse_;
};

/// Seed list closed under inverses, as §"generating set" requires.
struct GeneratingSet {
  const FiniteGroup* group = nullptr;
  std::vector<int> elements; // sorted, unique

  static GeneratingSet make(const FiniteGroup& g, std::vector<int> elems);
};

/// One equation/inequation system over symbols x1,x1',...,xl,xl'.
/// A word is a sequence of (variable index 1..l, primed) letters.
struct WordSystem {
  struct Letter {
    int var = 1;
    bool primed = false; // primed means the inverse
  };
  using Word = std::vector<Letter>;

  int arity = 0;
  std::vector<Word> equalities;   // must evaluate to the identity
  std::vector<Word> inequalities; // must evaluate to a non-identity

  void validate() const;
};

/// Injective homomorphism, stored as the image of every source element.
struct Monomorphism {
  const FiniteGroup* source = nullptr;
  const FiniteGroup* target = nullptr;
  std::vector<int> map;

  bool verify() const;
};

/// Smallest subset containing seeds and the identity, closed under product
/// and inverse. Sorted ascending.
std::vector<int> subgroup_generate(const FiniteGroup& g, const std::vector<int>& seeds);

/// Breadth-first distance from the identity in the Cayley graph of gens;
/// f(Id) = 0; absent when g is outside the generated subgroup.
std::optional<int> word_length(const GeneratingSet& gens, int g);

/// Complete duplicate-free list, sorted lexicographically on the map array.
std::vector<Monomorphism> enumerate_monomorphisms(const FiniteGroup& source,
                                                  const FiniteGroup& target,
                                                  const Limits& lim = default_limits());

/// Least assignment (lexicographic tuple of element indices) solving the
/// pair, or absent. Exhaustive over order^arity assignments.
std::optional<std::vector<int>> solves_pair(const FiniteGroup& g, const WordSystem& sys,
                                            const Limits& lim = default_limits());

/// Evaluates a word at an assignment (1-based variables).
int evaluate_word(const FiniteGroup& g, const WordSystem::Word& w,
                  const std::vector<int>& assignment);

} // namespace wb
