#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "relkit/config.hpp"
#include "relkit/perm_group.hpp"
#include "relkit/subset.hpp"

namespace relkit {

// Orbit of one subset under the right action x^g.
std::vector<mask_t> orbit_of_subset(const PermutationGroup& g, mask_t subset);

// Canonical representative: numerically least mask of the orbit.
mask_t orbit_representative(const PermutationGroup& g, mask_t subset);

// Orbits of G on a layer Omega^{k} or on the whole power set.
// Orbits are indexed in discovery order scanning masks in increasing numeric
// order, so orbit 0 contains the least mask and representatives increase.
struct OrbitPartition {
  int degree = 0;
  int k = -1;  // -1 for the whole power set
  std::vector<mask_t> representatives;       // least mask per orbit
  std::vector<std::uint64_t> orbit_sizes;

  int orbit_count() const { return static_cast<int>(representatives.size()); }
  int orbit_index_of(mask_t subset) const;   // -1 if not in the universe

  // index lookup: flat table when degree small, else hash map
  std::vector<std::int32_t> flat_index;      // size 2^degree when used
  std::unordered_map<mask_t, std::int32_t> hash_index;
};

OrbitPartition orbits_on_k_subsets(const PermutationGroup& g, int k);
OrbitPartition orbits_on_power_set(const PermutationGroup& g);

// Setwise stabilizer of `subset` in g: full element scan when the order is
// within cfg.element_iteration_cap, otherwise a stabilizer-chain backtrack
// pruned on mask preservation.
PermutationGroup setwise_stabilizer(const PermutationGroup& g, mask_t subset,
                                    const Config& cfg = {});

// True if some non-identity element of g fixes `subset` setwise (cheaper
// than building the full stabilizer; always uses the backtrack).
bool has_nontrivial_set_stabilizer(const PermutationGroup& g, mask_t subset);

// Regular-set census: marks every subset fixed by some non-identity element
// (unions of its cycles, 2^{c(g)} of them) in a 2^n bitmap; the unmarked
// subsets are the regular ones.
struct RegularSetCensus {
  int degree = 0;
  std::uint64_t group_order = 0;
  std::vector<std::uint64_t> regular_count_by_size;  // index 0..n
  std::uint64_t total_regular = 0;
  std::vector<int> sizes_with_regular;
  std::uint64_t work = 0;        // sum over g != 1 of 2^{c(g)}
  std::vector<std::uint64_t> bitmap;  // bit set == NOT regular

  bool is_regular(mask_t subset) const {
    return !(bitmap[subset >> 6] >> (subset & 63) & 1);
  }
  bool has_regular_set() const { return total_regular > 0; }
  // Regular k-subsets in increasing numeric order, up to `limit`.
  std::vector<mask_t> regular_sets(int k, std::size_t limit) const;
};

RegularSetCensus regular_set_census(const PermutationGroup& g,
                                    const Config& cfg = {});

// Error-path fallback when the census caps out: sample random subsets and
// test their stabilizers.  Returns a regular set if one is found.
std::optional<mask_t>
has_regular_set_sampled(const PermutationGroup& g, int trials,
                        std::uint64_t seed);

// Single orbit on every layer 0..n.
bool is_set_transitive(const PermutationGroup& g, const Config& cfg = {});

// Regular sets of at least two distinct sizes (complements k and n-k count
// as two when k != n-k; a lone size n/2 counts as one).
bool has_regular_sets_of_two_sizes(const RegularSetCensus& census);

}  // namespace relkit
