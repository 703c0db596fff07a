#pragma once

#include <cstdint>

namespace wb {

/// Desk-scale caps. Exceeding one raises BudgetError; results are never
/// silently truncated. Override per call or via the CLI --config file.
struct Limits {
  int assoc_check_max = 64;          // full associativity check up to this order
  std::uint64_t search_states = 10'000'000; // generic visited-state cap
  std::uint64_t cycle_budget = 1'000'000;   // max cycles enumerated per graph
  int matroid_ground_max = 20;       // explicit independence tables
  int frame_edges_max = 20;          // frame_matroid materialization
  int system_ground_max = 12;        // coloured system |U|
  int colours_max = 6;               // |C| for registry/classify/cleft
  int complement_ground_max = 6;     // coloured complement |V| in sums
  int cleft_ground_max = 3;          // complement |V| in cleft search
  int delta_max = 8;                 // counting modulus confinement
  int formula_nodes_max = 64;
  int var_index_max = 64;
  int conviviality_order_max = 48;   // ambient group order
  std::uint64_t lambda_bits_max = 1u << 20; // exponent cap in the Lambda bound
  std::uint64_t axiom_pairs_max = 200'000'000; // work cap in validate_matroid
};

inline const Limits& default_limits() {
  static const Limits lim{};
  return lim;
}

} // namespace wb
