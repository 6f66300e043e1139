#pragma once

#include <cstdint>
#include <map>

#include "relkit/config.hpp"
#include "relkit/perm_group.hpp"

namespace relkit {

// True when g and h have the same orbits on k-subsets.
bool k_orbit_equivalent(const PermutationGroup& g, const PermutationGroup& h,
                        int k);

// Largest group whose orbits on k-subsets coincide with g's: all h in Sym(n)
// with x^h in x^g for every k-subset x.  Found by a backtrack over point
// images pruned on orbit membership; k and n-k give the same group.  The
// single-orbit and k = 0 cases return Sym(n) without searching, so the
// degree cap (cfg.closure_max_degree) only gates the search path.
PermutationGroup k_closure(const PermutationGroup& g, int k,
                           const Config& cfg = {});

// Orbit closure g* = k_closure at k = floor(n/2): the largest group with
// the same orbits on the whole power set.  Results are cached per
// generator fingerprint for the lifetime of the process.
PermutationGroup orbit_closure(const PermutationGroup& g,
                               const Config& cfg = {});

struct ClosureReport {
  int degree = 0;
  std::uint64_t group_order = 0;
  std::map<int, std::uint64_t> k_closure_orders;  // k = 0 .. floor(n/2)
  std::uint64_t star_order = 0;
  std::uint64_t c = 0;  // index |g* : g|
  bool orbit_closed = false;
  PermutationGroup star;
};

ClosureReport closure_report(const PermutationGroup& g,
                             const Config& cfg = {});

// Instance of the closure monotonicity law: equivalence on l-subsets must
// imply equivalence on k-subsets when k <= l and k + l <= n.  Returns the
// truth of that implication for the given pair.
bool monotonicity_check(const PermutationGroup& g, const PermutationGroup& h,
                        int k, int l);

}  // namespace relkit
