#pragma once

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "wb/logic.hpp"
#include "wb/matroid.hpp"

namespace wb {

/// (U, c): a complete colouring of the subsets of U.
struct ColouredSystem {
  std::vector<std::string> ground;  // U
  std::vector<std::string> colours; // ordered colour names
  std::vector<std::uint8_t> colour; // 2^|U| colour indices

  int size() const { return static_cast<int>(ground.size()); }
  Mask full_mask() const { return bit(size()) - 1; }
  int colour_of(Mask x) const { return colour[static_cast<std::size_t>(x)]; }
  void check_shape(const Limits& lim = default_limits()) const;
};

/// (V, d): an acceptance table over (subset of V, colour) pairs.
struct ColouredComplement {
  std::vector<std::string> ground;  // V
  std::vector<std::string> colours;
  std::vector<std::uint8_t> accept; // 2^|V| * |C| bits, index = mask*|C| + colour

  int size() const { return static_cast<int>(ground.size()); }
  Mask full_mask() const { return bit(size()) - 1; }
  int accepts(Mask y, int colour_index) const {
    return accept[static_cast<std::size_t>(y) * colours.size() + static_cast<std::size_t>(colour_index)];
  }
  void check_shape(const Limits& lim = default_limits()) const;
};

/// Hypergraph on U ∪ V whose hyperedges are the unions X ∪ Y with
/// d(Y, c(X)) = 1. Ground order: U's labels then V's.
Hypergraph coloured_sum(const ColouredSystem& m, const ColouredComplement& pi,
                        const Limits& lim = default_limits());

/// Canonical recursive summary value: residue/colour/subset tables at the
/// atoms, pairs at conjunctions, finite sets at existentials. Total order
/// is (tag rank, then lexicographic recursive compare); finite sets are
/// kept sorted and duplicate-free so equality is structural.
class RegistryValue {
public:
  enum class Tag { ResidueTable = 0, ColourTable = 1, SubsetTable = 2, Pair = 3, FinSet = 4 };

  static RegistryValue residue_table(std::vector<std::pair<int, int>> entries);
  static RegistryValue colour_table(std::vector<std::pair<int, int>> entries);
  static RegistryValue subset_table(std::vector<int> vars, std::vector<std::uint8_t> bits);
  static RegistryValue pair(RegistryValue a, RegistryValue b);
  static RegistryValue fin_set(std::vector<RegistryValue> members);

  Tag tag() const { return tag_; }
  int table_at(int var) const;          // ResidueTable/ColourTable
  int subset_bit(int vi, int vj) const; // SubsetTable
  const RegistryValue& first() const { return children_[0]; }
  const RegistryValue& second() const { return children_[1]; }
  const std::vector<RegistryValue>& members() const { return children_; }

  std::strong_ordering operator<=>(const RegistryValue& o) const;
  bool operator==(const RegistryValue& o) const { return (*this <=> o) == 0; }

  std::string to_string() const;

private:
  Tag tag_ = Tag::ResidueTable;
  std::vector<std::pair<int, int>> entries_; // sorted by variable
  std::vector<int> vars_;                    // SubsetTable domain, sorted
  std::vector<std::uint8_t> bits_;           // |vars|^2 row-major
  std::vector<RegistryValue> children_;
};

/// R_{S,C,δ}(M, f, σ): σ's domain must be exactly S − Bound(f), S must
/// cover Var(f), and f must be δ-confined.
RegistryValue registry(const ColouredSystem& m, const Formula& f, const Interpretation& sigma,
                       VarSet S, int delta, const Limits& lim = default_limits());

/// Whether the registry value and (Π, τ) are sympathetic; τ's domain must
/// be exactly Free(f).
bool sympathetic(const RegistryValue& r, const Formula& f, const ColouredComplement& pi,
                 const Interpretation& tau, VarSet S, int delta,
                 const Limits& lim = default_limits());

struct Classification {
  std::vector<RegistryValue> values;             // one per input system
  std::vector<std::vector<std::size_t>> classes; // grouped indices, by registry order
  BigInt bound;                                  // lambda_bound(f, |Var|, |C|, delta)
};

/// Groups systems by equal registry value under the sentence f.
Classification classify_systems(const std::vector<ColouredSystem>& systems, const Formula& f,
                                int delta, const Limits& lim = default_limits());

struct Cleft {
  ColouredComplement complement;
  Interpretation tau;       // over the complement's ground
  int satisfied_side = 0;   // 1 or 2
};

/// Exhaustive scan over complements with |V| <= max_ground (tables in
/// binary-counter order over the (subset, colour) grid, then τ); returns
/// the first pair making exactly one sum satisfy f. threads > 1 splits the
/// table scan; the earliest hit is still returned.
std::optional<Cleft> cleft_search(const ColouredSystem& m1, const ColouredSystem& m2,
                                  const Formula& f, const Interpretation& sigma1,
                                  const Interpretation& sigma2, int max_ground,
                                  const Limits& lim = default_limits(), unsigned threads = 1);

// --- matroid-to-coloured encoders ---

/// C = {"1","2"}; dependent subsets to "1", independent to "2".
ColouredSystem encode_basic(const Matroid& m);

/// d(Y, i) = 1 when Y is independent and i = "2".
ColouredComplement encode_direct_sum_complement(const Matroid& n);

/// Two-sum encoders along a basepoint that is neither a loop nor a coloop.
/// System side: colours {"1","2","3"} = dependent / spans p / free of p.
ColouredSystem encode_two_sum_system(const Matroid& m, const std::string& basepoint);
ColouredComplement encode_two_sum_complement(const Matroid& n, const std::string& basepoint);

/// Amalgam encoders over a base of rank 2 contained in the ground set.
/// The colour of X is the tuple (cl(X)∩l, cl(X\l)∩l, dependent?, skew?).
ColouredSystem encode_amalgam_side(const Matroid& m, const std::vector<std::string>& base);
/// Acceptance table on E \ l deciding amalgam independence from the colour.
ColouredComplement encode_amalgam_complement(const Matroid& m, const std::vector<std::string>& base);

} // namespace wb
