#pragma once

#include <cstdint>
#include <optional>

#include "relkit/config.hpp"
#include "relkit/perm_group.hpp"
#include "relkit/relation.hpp"

namespace relkit {

// The full group {h in Sym(n) : x^h in R for all x in R}, found by a
// backtrack over point images pruned on per-size incidence signatures and
// partial-member feasibility.  Layers that are complete (trivial) are
// dropped first; G(empty) = Sym(n).  The unseeded path requires
// n <= cfg.exhaustive_invariance_max_degree; passing a seed (a known
// subgroup, verified to preserve R) lifts the cap and speeds the search.
PermutationGroup invariance_group(const Relation& r, const Config& cfg = {});
PermutationGroup invariance_group(const Relation& r,
                                  const PermutationGroup& seed,
                                  const Config& cfg = {});

struct RelationGroupReport {
  std::uint64_t group_order = 0;
  std::uint64_t c = 0;              // index of the group in its orbit closure
  std::uint64_t closure_order = 0;  // order of the best invariance group found
  std::uint64_t r_of_g = 0;         // least index |G(R) : G| over relations
  bool exact = false;               // false when r_of_g is only an upper bound
  bool is_relation_group = false;   // r_of_g = 1 (only claimed when exact)
  std::optional<Relation> witness_relation;
};

// Minimizes |G(R)| over all relations preserved by g.  Such relations are
// exactly the unions of orbit-closure orbits, and every G(R) is a union of
// cosets of the orbit closure, so the search runs as a reachability sweep
// over coset subsets, one slot per informative layer.  When a cap is hit
// (coset count, per-layer orbit count, or state count) the sweep falls back
// to a drop/add local search over orbit unions and reports an upper bound;
// the bound is promoted to exact when it reaches 1 or the closure index c.
RelationGroupReport relation_closure(const PermutationGroup& g,
                                     const Config& cfg = {});

bool is_relation_group(const PermutationGroup& g, const Config& cfg = {});

// Given h = invariance_group(r), a regular set w for h whose size is not an
// arity of r, and a subgroup g of h, returns r together with the g-orbit of
// w; the invariance group of the result is exactly g.
Relation basic_lemma_construct(const PermutationGroup& h, const Relation& r,
                               mask_t w, const PermutationGroup& g,
                               const Config& cfg = {});

}  // namespace relkit
