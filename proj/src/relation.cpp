#include "relkit/relation.hpp"

#include <algorithm>

#include "relkit/error.hpp"
#include "relkit/subset_action.hpp"

namespace relkit {

namespace {

std::uint64_t layer_size(int n, int k) {
  // C(n,k); n <= 64 keeps this well inside 64 bits for k <= 2 uses below,
  // but compute with __int128 so any (n,k) is safe.
  unsigned __int128 v = 1;
  for (int i = 1; i <= k; ++i) v = v * (n - k + i) / i;
  return static_cast<std::uint64_t>(v);
}

}  // namespace

Relation::Relation(int degree, std::vector<mask_t> members)
    : degree_(degree), members_(std::move(members)) {
  if (degree < 1 || degree > kMaxDegree)
    throw precondition_error("degree", "relation degree out of range");
  for (mask_t m : members_)
    if ((m & ~full_mask(degree)) != 0)
      throw precondition_error("member_range",
                               "relation member outside the point set");
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()),
                 members_.end());
}

bool Relation::contains(mask_t x) const {
  return std::binary_search(members_.begin(), members_.end(), x);
}

std::vector<int> Relation::arities() const {
  std::vector<int> out;
  for (mask_t m : members_) {
    int k = popcount(m);
    if (std::find(out.begin(), out.end(), k) == out.end()) out.push_back(k);
  }
  std::sort(out.begin(), out.end());
  return out;
}

int Relation::max_arity() const {
  int best = 0;
  for (mask_t m : members_) best = std::max(best, popcount(m));
  return best;
}

Relation Relation::layer(int k) const {
  std::vector<mask_t> out;
  for (mask_t m : members_)
    if (popcount(m) == k) out.push_back(m);
  return Relation(degree_, std::move(out));
}

Relation Relation::complement_image() const {
  std::vector<mask_t> out;
  out.reserve(members_.size());
  for (mask_t m : members_) out.push_back(complement(m, degree_));
  return Relation(degree_, std::move(out));
}

Relation Relation::image(const Permutation& g) const {
  if (g.degree() > degree_)
    throw precondition_error("degree", "permutation degree exceeds relation");
  std::vector<mask_t> out;
  out.reserve(members_.size());
  for (mask_t m : members_) out.push_back(g.apply(m));
  return Relation(degree_, std::move(out));
}

bool Relation::is_invariant_under(const Permutation& g) const {
  if (g.degree() > degree_)
    throw precondition_error("degree", "permutation degree exceeds relation");
  for (mask_t m : members_)
    if (!contains(g.apply(m))) return false;
  return true;
}

bool Relation::is_invariant_under(const PermutationGroup& g) const {
  for (const Permutation& p : g.generators())
    if (!is_invariant_under(p)) return false;
  return true;
}

bool Relation::is_trivial() const {
  std::vector<std::uint64_t> count(degree_ + 1, 0);
  for (mask_t m : members_) ++count[popcount(m)];
  for (int k = 0; k <= degree_; ++k)
    if (count[k] != 0 && count[k] != layer_size(degree_, k)) return false;
  return true;
}

Relation Relation::union_with(const Relation& other) const {
  if (other.degree_ != degree_)
    throw precondition_error("degree", "relation degrees differ");
  std::vector<mask_t> out = members_;
  out.insert(out.end(), other.members_.begin(), other.members_.end());
  return Relation(degree_, std::move(out));
}

Relation relation_from_sets(int degree,
                            const std::vector<std::vector<int>>& sets) {
  std::vector<mask_t> members;
  members.reserve(sets.size());
  for (const auto& s : sets) {
    mask_t m = 0;
    for (int p : s) {
      if (p < 0 || p >= degree)
        throw precondition_error("member_range",
                                 "relation point outside the point set");
      m |= bit(p);
    }
    members.push_back(m);
  }
  return Relation(degree, std::move(members));
}

std::vector<std::vector<int>> relation_to_sets(const Relation& r) {
  std::vector<std::vector<int>> out;
  out.reserve(r.size());
  for (mask_t m : r.members()) out.push_back(mask_points(m));
  return out;
}

Relation orbit_relation(const PermutationGroup& g, mask_t seed) {
  return Relation(g.degree(), orbit_of_subset(g, seed));
}

Relation union_of_orbit_relations(const PermutationGroup& g,
                                  const std::vector<mask_t>& seeds) {
  std::vector<mask_t> members;
  for (mask_t s : seeds) {
    auto orb = orbit_of_subset(g, s);
    members.insert(members.end(), orb.begin(), orb.end());
  }
  return Relation(g.degree(), std::move(members));
}

}  // namespace relkit
