#pragma once

// Naive reference implementations used as oracles.  Everything here works by
// exhaustive enumeration with no shared code paths with the library proper
// (no stabilizer chains, no bitmap tricks), so agreement is meaningful.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "relkit/perm.hpp"
#include "relkit/subset.hpp"

namespace oracle {

using relkit::mask_t;
using relkit::Permutation;

// Every element of Sym(n), lexicographic by image table.  n <= 8.
inline std::vector<Permutation> all_permutations(int n) {
  std::vector<int> img(n);
  std::iota(img.begin(), img.end(), 0);
  std::vector<Permutation> out;
  do {
    out.emplace_back(img);
  } while (std::next_permutation(img.begin(), img.end()));
  return out;
}

// Closure of a generator list under composition (plain worklist, no chains).
inline std::vector<Permutation> group_elements(
    const std::vector<Permutation>& gens, int degree) {
  std::set<std::vector<std::uint8_t>> seen;
  std::vector<Permutation> out;
  auto push = [&](const Permutation& p) {
    if (seen.insert(p.images()).second) out.push_back(p);
  };
  push(Permutation(degree));
  for (std::size_t i = 0; i < out.size(); ++i)
    for (const auto& g : gens) push(relkit::compose(out[i], g.extended(degree)));
  return out;
}

inline std::uint64_t order(const std::vector<Permutation>& gens, int degree) {
  return group_elements(gens, degree).size();
}

inline bool fixes_set(const Permutation& p, mask_t x) {
  return p.apply(x) == x;
}

// Elements of `elems` fixing x setwise.
inline std::vector<Permutation> set_stabilizer(
    const std::vector<Permutation>& elems, mask_t x) {
  std::vector<Permutation> out;
  for (const auto& p : elems)
    if (fixes_set(p, x)) out.push_back(p);
  return out;
}

// Number of regular subsets of each size 0..n (trivial setwise stabilizer).
inline std::vector<std::uint64_t> regular_counts(
    const std::vector<Permutation>& elems, int n) {
  std::vector<std::uint64_t> counts(n + 1, 0);
  for (mask_t m = 0; m < (mask_t{1} << n); ++m) {
    bool regular = true;
    for (const auto& p : elems)
      if (!p.is_identity() && fixes_set(p, m)) {
        regular = false;
        break;
      }
    if (regular) ++counts[relkit::popcount(m)];
  }
  return counts;
}

// Orbit of a subset under an element list (applies every element).
inline std::set<mask_t> subset_orbit(const std::vector<Permutation>& elems,
                                     mask_t x) {
  std::set<mask_t> out;
  for (const auto& p : elems) out.insert(p.apply(x));
  return out;
}

// Orbits of an element list on all of P(Omega): representative -> size.
inline std::map<mask_t, std::uint64_t> power_set_orbits(
    const std::vector<Permutation>& elems, int n) {
  std::map<mask_t, std::uint64_t> out;
  std::vector<bool> seen(std::size_t{1} << n, false);
  for (mask_t m = 0; m < (mask_t{1} << n); ++m) {
    if (seen[m]) continue;
    auto orb = subset_orbit(elems, m);
    for (mask_t o : orb) seen[o] = true;
    out[m] = orb.size();
  }
  return out;
}

// Non-trivial blocks containing point 0, for a transitive element list.
inline std::vector<mask_t> blocks_through_zero(
    const std::vector<Permutation>& elems, int n) {
  std::vector<mask_t> out;
  for (mask_t b = 1; b < relkit::full_mask(n); ++b) {
    if (!(b & 1) || relkit::popcount(b) < 2) continue;
    bool block = true;
    for (const auto& p : elems) {
      mask_t img = p.apply(b);
      if (img != b && (img & b)) {
        block = false;
        break;
      }
    }
    if (block) out.push_back(b);
  }
  return out;
}

// Inclusion-minimal members of blocks_through_zero.
inline std::vector<mask_t> minimal_blocks_through_zero(
    const std::vector<Permutation>& elems, int n) {
  auto all = blocks_through_zero(elems, n);
  std::vector<mask_t> out;
  for (mask_t b : all) {
    bool minimal = true;
    for (mask_t c : all)
      if (c != b && (c & b) == c) {
        minimal = false;
        break;
      }
    if (minimal) out.push_back(b);
  }
  return out;
}

}  // namespace oracle
