#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

namespace wb {

/// Edge/element subsets as characteristic bitmasks over an ordered ground list.
using Mask = std::uint64_t;

inline constexpr Mask bit(int i) { return Mask{1} << i; }
inline constexpr bool has(Mask m, int i) { return (m >> i) & 1; }
inline int popcount(Mask m) { return std::popcount(m); }

/// Calls fn(i) for every set bit of m, ascending.
template <typename Fn>
void for_each_bit(Mask m, Fn&& fn) {
  while (m) {
    int i = std::countr_zero(m);
    fn(i);
    m &= m - 1;
  }
}

inline std::vector<int> bits_of(Mask m) {
  std::vector<int> out;
  for_each_bit(m, [&](int i) { out.push_back(i); });
  return out;
}

/// All submasks of m, descending from m to 0 (m itself and 0 included).
template <typename Fn>
void for_each_submask(Mask m, Fn&& fn) {
  Mask s = m;
  while (true) {
    fn(s);
    if (s == 0) break;
    s = (s - 1) & m;
  }
}

inline std::string mask_to_string(Mask m, const std::vector<std::string>& labels) {
  if (m == 0) return "-";
  std::string out;
  for_each_bit(m, [&](int i) {
    if (!out.empty()) out += ' ';
    out += labels[static_cast<std::size_t>(i)];
  });
  return out;
}

} // namespace wb
