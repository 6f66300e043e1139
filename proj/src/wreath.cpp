#include "relkit/wreath.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "relkit/blocks.hpp"
#include "relkit/error.hpp"
#include "relkit/invariance.hpp"
#include "relkit/subset_action.hpp"

namespace relkit {

namespace {

unsigned __int128 pow_u128(unsigned __int128 base, int exponent) {
  unsigned __int128 r = 1;
  while (exponent-- > 0) r *= base;
  return r;
}

// G(rel) == candidate, decided by the seeded backtrack (exact at any degree;
// the seed must already preserve rel).
bool exact_invariance(const Relation& rel, const PermutationGroup& candidate,
                      const Config& cfg) {
  return invariance_group(rel, candidate, cfg).order() == candidate.order();
}

std::string census_fingerprint_of(const PermutationGroup& g,
                                  const Config& cfg) {
  try {
    const RegularSetCensus census = regular_set_census(g, cfg);
    std::string fp = "r";
    for (std::uint64_t count : census.regular_count_by_size) {
      fp += ':';
      fp += std::to_string(count);
    }
    return fp;
  } catch (const cap_exceeded&) {
    return "uncensused";
  }
}

ChainLink make_link(PermutationGroup g, const Config& cfg) {
  const int degree = g.degree();
  const std::uint64_t order = g.order();
  std::string fp = census_fingerprint_of(g, cfg);
  return {std::move(g), degree, order, std::move(fp)};
}

void extend_chains(const PermutationGroup& g, std::vector<ChainLink>& prefix,
                   std::unordered_set<std::string>& seen, ChainReport& out,
                   const Config& cfg) {
  if (out.truncated) return;
  if (is_primitive(g)) {
    prefix.push_back(make_link(g, cfg));
    std::string key;
    for (const ChainLink& link : prefix) {
      key += std::to_string(link.degree);
      key += '|';
      key += std::to_string(link.order);
      key += '|';
      key += link.census_fingerprint;
      key += ';';
    }
    if (!seen.insert(key).second) {
      ++out.fingerprint_merges;
    } else if (out.chains.size() >=
               static_cast<std::size_t>(std::max(cfg.max_chains, 1))) {
      out.truncated = true;
    } else {
      out.chains.push_back(ImprimitivityChain{prefix});
    }
    prefix.pop_back();
    return;
  }
  for (const BlockSystem& system : minimal_block_systems(g)) {
    PermutationGroup base = induced_block_group(g, system, 0);
    // minimality of the blocks forces a primitive induced group
    if (!is_primitive(base))
      throw error("minimal block system induced an imprimitive link");
    prefix.push_back(make_link(std::move(base), cfg));
    extend_chains(block_action(g, system), prefix, seen, out, cfg);
    prefix.pop_back();
    if (out.truncated) return;
  }
}

// (degree, order) pins the three small exceptions except at (9,72), where
// three primitive groups share the order; only the sharply 2-transitive
// Frobenius one belongs, and it alone contains elements of order 8.
bool is_explicit_small_exception(const PermutationGroup& g, const Config& cfg) {
  const int d = g.degree();
  const std::uint64_t o = g.order();
  if (d < 2) return false;
  if (d == 5 && o == 5) return is_primitive(g);
  if (d == 8 && o == 56) return is_primitive(g);
  if (d == 9 && o == 72 && is_primitive(g)) {
    bool found = false;
    g.for_each_element(
        [&](const Permutation& p) {
          const std::vector<int> lens = p.cycle_lengths();
          if (std::find(lens.begin(), lens.end(), 8) != lens.end()) {
            found = true;
            return false;
          }
          return true;
        },
        cfg.element_iteration_cap);
    return found;
  }
  return false;
}

}  // namespace

WreathAction wreath_product(const PermutationGroup& k,
                            const PermutationGroup& l) {
  const int d = k.degree();
  const int s = l.degree();
  if (d < 1 || s < 1 || d * s > kMaxDegree)
    throw precondition_error("degree", "wreath degree d*s must be 1..64");
  if (!l.is_transitive())
    throw precondition_error("transitive", "top group must be transitive");
  const int n = d * s;

  std::vector<Permutation> gens;
  for (const Permutation& g : k.generators()) {
    std::vector<int> img(n);
    for (int p = 0; p < n; ++p) img[p] = p < d ? g(p) : p;
    gens.emplace_back(img);
  }
  for (const Permutation& t : l.generators()) {
    std::vector<int> img(n);
    for (int i = 0; i < s; ++i)
      for (int delta = 0; delta < d; ++delta)
        img[delta + d * i] = delta + d * t(i);
    gens.emplace_back(img);
  }
  PermutationGroup product(n, gens);

  const unsigned __int128 expected =
      pow_u128(k.order(), s) * static_cast<unsigned __int128>(l.order());
  if (expected <= std::numeric_limits<std::uint64_t>::max() &&
      product.order() != static_cast<std::uint64_t>(expected))
    throw error("wreath product order mismatch");
  return {k, l, std::move(product), d, s};
}

Relation rela_block_relation(const PermutationGroup& k, const Relation& r_delta,
                             int s, const Config& cfg) {
  const int d = k.degree();
  if (r_delta.degree() != d)
    throw precondition_error("degree",
                             "relation degree differs from the block group");
  if (s < 1 || d * s > kMaxDegree)
    throw precondition_error("degree", "need 1 <= s and d*s <= 64");
  if (r_delta.empty())
    throw precondition_error("block_arity", "need at least one member");
  for (int a : r_delta.arities())
    if (a < 2 || a > d - 2)
      throw precondition_error("block_arity",
                               "member sizes must lie in 2..d-2");
  if (!is_primitive(k))
    throw precondition_error("k_primitive", "block group must be primitive");
  if (!r_delta.is_invariant_under(k))
    throw precondition_error("k_relation_group",
                             "block group does not preserve the relation");
  if (!exact_invariance(r_delta, k, cfg))
    throw precondition_error("k_relation_group",
                             "the relation has a larger invariance group");

  std::vector<mask_t> members;
  members.reserve(r_delta.size() * static_cast<std::size_t>(s));
  for (int i = 0; i < s; ++i)
    for (mask_t y : r_delta.members()) members.push_back(y << (d * i));
  return Relation(d * s, std::move(members));
}

Relation rela_top_relation(const Relation& r_sigma, int d, int s) {
  if (d < 1 || s < 1 || d * s > kMaxDegree)
    throw precondition_error("degree", "need 1 <= d, 1 <= s and d*s <= 64");
  if (r_sigma.degree() != s)
    throw precondition_error("degree", "top relation degree must be s");
  std::vector<mask_t> members;
  members.reserve(r_sigma.size());
  for (mask_t m : r_sigma.members()) {
    mask_t u = 0;
    for (int i : mask_points(m)) u |= full_mask(d) << (d * i);
    members.push_back(u);
  }
  return Relation(d * s, std::move(members));
}

mask_t regular_set_rela4(const PermutationGroup& k, const PermutationGroup& l,
                         mask_t x, int r_sigma) {
  const int d = k.degree();
  const int s = l.degree();
  if (d < 1 || s < 1 || d * s > kMaxDegree)
    throw precondition_error("degree", "wreath degree d*s must be 1..64");
  if (x & ~full_mask(d))
    throw precondition_error("set_range", "x must be a subset of one block");
  if (r_sigma < 0 || r_sigma > s)
    throw precondition_error("set_range", "r_sigma must lie in 0..s");
  if (2 * popcount(x) == d)
    throw precondition_error("half_block",
                             "|x| = d/2 cannot pin the block sides");
  if (has_nontrivial_set_stabilizer(k, x))
    throw precondition_error("block_not_regular",
                             "x is not regular for the block group");
  if (has_nontrivial_set_stabilizer(l, full_mask(r_sigma)))
    throw precondition_error("top_not_regular",
                             "{0..r_sigma-1} is not regular for the top group");

  const mask_t xc = complement(x, d);
  mask_t w = 0;
  for (int i = 0; i < s; ++i) w |= (i < r_sigma ? x : xc) << (d * i);
  return w;
}

mask_t regular_set_rela15(const PermutationGroup& k,
                          const std::vector<mask_t>& xs) {
  const int d = k.degree();
  const int s = static_cast<int>(xs.size());
  if (d < 1 || s < 1 || d * s > kMaxDegree)
    throw precondition_error("degree", "need 1 <= s and d*s <= 64");
  std::set<int> sizes;
  mask_t w = 0;
  for (int i = 0; i < s; ++i) {
    const mask_t x = xs[i];
    if (x & ~full_mask(d))
      throw precondition_error("set_range",
                               "piece must be a subset of one block");
    if (!sizes.insert(popcount(x)).second)
      throw precondition_error("distinct_sizes",
                               "piece sizes must be pairwise distinct");
    if (has_nontrivial_set_stabilizer(k, x))
      throw precondition_error("piece_not_regular",
                               "piece is not regular for the block group");
    w |= x << (d * i);
  }
  return w;
}

Relation rela5_define_subgroup(const PermutationGroup& k,
                               const PermutationGroup& l,
                               const Relation& r_delta,
                               const Relation& r_sigma, mask_t w,
                               const PermutationGroup& g, const Config& cfg) {
  const int d = k.degree();
  const int s = l.degree();
  const int n = d * s;
  if (r_sigma.degree() != s)
    throw precondition_error("degree",
                             "top relation degree differs from the top group");
  if (g.degree() != n)
    throw precondition_error("degree", "subgroup degree differs from d*s");

  // checks block_arity, k_primitive and k_relation_group
  const Relation block_copies = rela_block_relation(k, r_delta, s, cfg);
  if (!r_sigma.is_invariant_under(l))
    throw precondition_error("l_relation_group",
                             "top group does not preserve the top relation");
  if (!exact_invariance(r_sigma, l, cfg))
    throw precondition_error("l_relation_group",
                             "the top relation has a larger invariance group");
  const WreathAction action = wreath_product(k, l);
  if (!g.is_subgroup_of(action.product))
    throw precondition_error("not_subgroup",
                             "g must sit inside the wreath product");
  if (w == 0 || (w & ~full_mask(n)))
    throw precondition_error("set_range",
                             "w must be a nonempty subset of the d*s points");

  const Relation combined =
      block_copies.union_with(rela_top_relation(r_sigma, d, s));
  const std::vector<int> taken = combined.arities();
  if (std::binary_search(taken.begin(), taken.end(), popcount(w)))
    throw precondition_error("arity_clash",
                             "|w| must differ from every other member size");

  const Relation result = combined.union_with(orbit_relation(g, w));
  if (!exact_invariance(result, g, cfg))
    throw precondition_error("not_defining",
                             "the assembled relation does not pin the subgroup");
  return result;
}

ChainReport imprimitivity_chains(const PermutationGroup& h, const Config& cfg) {
  if (h.degree() < 2 || !h.is_transitive())
    throw precondition_error("transitive", "chains require a transitive group");
  if (is_primitive(h))
    throw precondition_error("imprimitive",
                             "primitive groups have no imprimitivity chain");
  ChainReport out;
  std::vector<ChainLink> prefix;
  std::unordered_set<std::string> seen;
  extend_chains(h, prefix, seen, out, cfg);
  return out;
}

LinkAMembership a_membership(const PermutationGroup& g, const Config& cfg) {
  LinkAMembership m;
  m.is_sym_or_alt = sym_alt_kind(g) != SymAltKind::Neither;
  try {
    const RegularSetCensus census = regular_set_census(g, cfg);
    m.census_known = true;
    m.in_L_NR = !census.has_regular_set();
    m.in_L_SR = !m.in_L_NR && g.degree() % 2 == 0 &&
                census.sizes_with_regular ==
                    std::vector<int>{g.degree() / 2};
  } catch (const cap_exceeded&) {
  }
  m.is_explicit_small = is_explicit_small_exception(g, cfg);
  m.in_A = m.is_sym_or_alt || m.in_L_NR || m.in_L_SR || m.is_explicit_small;
  return m;
}

AClassification classify_A_prime(const PermutationGroup& h,
                                 const Config& cfg) {
  AClassification out{AClass::neither, imprimitivity_chains(h, cfg), {}};
  bool some_all_in = false;
  bool some_all_out = false;
  for (const ImprimitivityChain& chain : out.chains.chains) {
    std::vector<LinkAMembership> row;
    bool all_in = true;
    bool all_out = true;
    for (const ChainLink& link : chain.links) {
      const LinkAMembership m = a_membership(link.group, cfg);
      all_in = all_in && m.in_A;
      // counting a link as outside requires a completed census
      all_out = all_out && m.census_known && !m.in_A;
      row.push_back(m);
    }
    some_all_in = some_all_in || all_in;
    some_all_out = some_all_out || all_out;
    out.memberships.push_back(std::move(row));
  }
  if (some_all_in && some_all_out)
    out.verdict = AClass::both;
  else if (some_all_in)
    out.verdict = AClass::a_imprimitive;
  else if (some_all_out)
    out.verdict = AClass::a_prime_imprimitive;
  return out;
}

}  // namespace relkit
