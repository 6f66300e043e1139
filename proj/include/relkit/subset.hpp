#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace relkit {

// Subsets of Omega = {0..n-1} are bit masks; degree <= 64 throughout.
using mask_t = std::uint64_t;

constexpr int kMaxDegree = 64;

constexpr mask_t full_mask(int degree) {
  return degree >= 64 ? ~mask_t{0} : ((mask_t{1} << degree) - 1);
}

constexpr mask_t bit(int point) { return mask_t{1} << point; }

constexpr int popcount(mask_t m) { return std::popcount(m); }

constexpr mask_t complement(mask_t m, int degree) {
  return ~m & full_mask(degree);
}

// Points of a mask in increasing order.
std::vector<int> mask_points(mask_t m);

// Mask from a point list (repeats collapse).
mask_t points_mask(const std::vector<int>& points);

// Next k-subset of {0..n-1} after m in numeric order (Gosper's hack);
// returns 0 when m was the last one.  Start iteration from (1<<k)-1.
inline mask_t next_k_subset(mask_t m, int degree) {
  mask_t c = m & (~m + 1);
  mask_t r = m + c;
  mask_t next = (((r ^ m) >> 2) / c) | r;
  return next < (mask_t{1} << degree) ? next : 0;
}

// All k-subsets of {0..degree-1} in increasing numeric order.
std::vector<mask_t> k_subsets(int degree, int k);

}  // namespace relkit
