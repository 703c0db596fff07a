#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wb/gain.hpp"

namespace wb {

/// Edge-collection manifest shared by both gadget families: collection name
/// (A, B1.., C, D1.., K, Q, T) to member edge labels, plus the amalgam base.
struct GadgetManifest {
  std::map<std::string, std::vector<std::string>> collections;
  std::vector<std::string> base_edges;
  std::pair<std::string, std::string> base_vertices;
};

/// The word-length gadget over a generating set: a two-terminal ladder whose
/// balanced closing cycles encode generator words evaluating to s.
struct HGadget {
  Gaining gaining;
  GadgetManifest manifest;
  int n = 0; // generator count
  int N = 0; // ladder length = word length of s
  std::vector<int> generators;
  int s_elem = 0;
  int m_elem = 0;
  std::vector<int> d_values; // 12, rows D1..D6 x {1,2}; empty when star_only
  std::vector<int> q_values; // N+7; empty when star_only
  bool star_only = false;
};

/// The subgroup-pair gadget: three B-rows over the larger subgroup, A/C rows
/// over the smaller, gained in a common ambient group.
struct LambdaGadget {
  Gaining gaining;
  GadgetManifest manifest;
  std::vector<int> gamma1; // subgroup elements of the ambient, ascending
  std::vector<int> gamma2;
  int m_elem = 0;
  std::vector<int> d_values; // 22, rows D1..D11 x {1,2}
  std::vector<int> q_values; // 9
  bool star_only = false;
};

/// Requirements checked before returning: f(s)=N, f(m) >= 2N+1, every cycle
/// through a D or Q edge unbalanced (full build), and the designated
/// balanced transfer cycles.
HGadget build_h_gadget(const FiniteGroup& group, const GeneratingSet& gens, int s_elem,
                       int m_elem, const std::vector<int>& d_values,
                       const std::vector<int>& q_values, int N, bool star_only,
                       const Limits& lim = default_limits());

/// Requirements: gamma1 and gamma2 subgroups with gamma1 ⊆ gamma2, m outside
/// gamma2, D/Q cycles unbalanced (full build).
LambdaGadget build_lambda_gadget(const FiniteGroup& ambient, const std::vector<int>& gamma1,
                                 const std::vector<int>& gamma2, int m_elem,
                                 const std::vector<int>& d_values,
                                 const std::vector<int>& q_values, bool star_only,
                                 const Limits& lim = default_limits());

struct HParams {
  int s_elem = 0;
  int m_elem = 0;
  std::vector<int> d_values;
  std::vector<int> q_values;
};

struct LambdaParams {
  int m_elem = 0;
  std::vector<int> d_values;
  std::vector<int> q_values;
};

/// Deterministic parameter scan: least s with f(s)=N, least m with
/// f(m) >= 2N+1, then greedy D/Q assignment (rows first, then loops),
/// re-checking the unbalance condition after each choice. Absent when the
/// group is too small.
std::optional<HParams> find_h_params(const FiniteGroup& group, const GeneratingSet& gens, int N,
                                     const Limits& lim = default_limits());

/// Amalgam constructions pin shared base edges to the other side's values
/// and may need a specific m (one outside a larger generated subgroup).
struct LambdaSearchOptions {
  std::optional<int> m_elem;
  std::map<std::string, int> pinned; // edge label -> required gain
};

std::optional<LambdaParams> find_lambda_params(const FiniteGroup& ambient,
                                               const std::vector<int>& gamma1,
                                               const std::vector<int>& gamma2,
                                               const Limits& lim = default_limits(),
                                               const LambdaSearchOptions& options = {});

/// Minimum number of non-identity letters over all gamma-row words whose
/// closing cycle is balanced; equals N on every accepted build.
std::optional<int> min_balanced_eta_length(const HGadget& h);

} // namespace wb
