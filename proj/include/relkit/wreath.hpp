#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "relkit/config.hpp"
#include "relkit/perm_group.hpp"
#include "relkit/relation.hpp"

namespace relkit {

// K wr L in its imprimitive action on d*s points, d = |Δ| the block size
// and s the block count; the point (δ, i) of block i is numbered δ + d*i.
struct WreathAction {
  PermutationGroup base;     // K, acting on one block
  PermutationGroup top;      // L, permuting the blocks (transitive)
  PermutationGroup product;  // on d*s points, order |K|^s * |L|
  int d = 0;
  int s = 0;
};

WreathAction wreath_product(const PermutationGroup& k,
                            const PermutationGroup& l);

// A copy of r_delta in every block.  Requires K primitive, G(r_delta) = K
// exactly (checked with the seeded invariance search) and all member sizes
// within 2..d-2; under those hypotheses the invariance group of the result
// is K wr Sym(s), which tests verify independently.
Relation rela_block_relation(const PermutationGroup& k,
                             const Relation& r_delta, int s,
                             const Config& cfg = {});

// Each member {i1..it} of r_sigma becomes the union of blocks i1..it, a
// subset of size t*d.  Combining with rela_block_relation cuts the top
// group to G(r_sigma): the union relation has invariance group K wr
// G(r_sigma) and maximum arity d * max_arity(r_sigma).
Relation rela_top_relation(const Relation& r_sigma, int d, int s);

// Regular set for K wr L: x in the first r_sigma blocks and the complement
// of x in the rest, of size r_sigma*d + (s - 2*r_sigma)*(d - |x|).
// Requires x regular for K with |x| != d/2 and {0..r_sigma-1} regular for L.
mask_t regular_set_rela4(const PermutationGroup& k, const PermutationGroup& l,
                         mask_t x, int r_sigma);

// Regular set for K wr L, any transitive L: one regular piece per block,
// sizes pairwise distinct (the sizes pin the blocks, the pieces pin the
// block permutations).
mask_t regular_set_rela15(const PermutationGroup& k,
                          const std::vector<mask_t>& xs);

// The relation (block copies of r_delta) ∪ (block unions over r_sigma)
// ∪ w^g, whose invariance group is exactly g.  Checks the construction
// hypotheses (K primitive, G(r_delta) = K, G(r_sigma) = L, g ≤ K wr L,
// |w| distinct from the other arities) and then verifies the result with
// the seeded invariance search, so a returned relation is always a proof.
Relation rela5_define_subgroup(const PermutationGroup& k,
                               const PermutationGroup& l,
                               const Relation& r_delta,
                               const Relation& r_sigma, mask_t w,
                               const PermutationGroup& g,
                               const Config& cfg = {});

struct ChainLink {
  PermutationGroup group;  // relabelled to {0..degree-1}
  int degree = 0;
  std::uint64_t order = 0;
  std::string census_fingerprint;  // "uncensused" when caps prevent it
};

struct ImprimitivityChain {
  std::vector<ChainLink> links;  // all primitive; degrees multiply to n
};

struct ChainReport {
  std::vector<ImprimitivityChain> chains;
  bool truncated = false;        // cfg.max_chains hit
  int fingerprint_merges = 0;    // chains dropped as fingerprint duplicates
};

// Every decomposition of h into primitive links: depth-first over the
// minimal block systems at each level, taking the induced block group as
// the link and recursing on the action on blocks.  Chains are deduplicated
// by per-link (degree, order, census fingerprint); merges are counted, not
// silently ignored.  Requires h transitive and imprimitive.
ChainReport imprimitivity_chains(const PermutationGroup& h,
                                 const Config& cfg = {});

// Membership of one primitive group in the obstruction list 𝒜: symmetric or
// alternating, or no regular set at all, or regular sets only of half the
// degree, or one of three small exceptions of degree 5, 8, 9.  Everything is
// computed from invariants (orders, censuses, element orders), never from
// group names.
struct LinkAMembership {
  bool census_known = false;
  bool is_sym_or_alt = false;
  bool in_L_NR = false;          // primitive with no regular set
  bool in_L_SR = false;          // regular sets exist, all of size degree/2
  bool is_explicit_small = false;  // (5,5), (8,56) or the (9,72) Frobenius one
  bool in_A = false;
};

LinkAMembership a_membership(const PermutationGroup& g, const Config& cfg = {});

enum class AClass { a_imprimitive, a_prime_imprimitive, both, neither };

struct AClassification {
  AClass verdict = AClass::neither;
  ChainReport chains;
  // memberships[i][j] describes chains.chains[i].links[j]
  std::vector<std::vector<LinkAMembership>> memberships;
};

// Labels h by its chains: some chain with every link in 𝒜, some chain with
// every link provably outside 𝒜, both, or neither.  Links whose census is
// out of reach count for neither side.
AClassification classify_A_prime(const PermutationGroup& h,
                                 const Config& cfg = {});

}  // namespace relkit
