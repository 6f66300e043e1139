#pragma once

#include <vector>

#include "relkit/perm.hpp"
#include "relkit/perm_group.hpp"
#include "relkit/subset.hpp"

namespace relkit {

// An unordered relation: a finite family of subsets of {0..degree-1}.
// Members are stored as sorted, duplicate-free masks.
class Relation {
 public:
  Relation() = default;
  Relation(int degree, std::vector<mask_t> members);

  int degree() const { return degree_; }
  const std::vector<mask_t>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  bool contains(mask_t x) const;

  // Distinct member sizes in increasing order (the arity of the relation).
  std::vector<int> arities() const;
  // Largest member size, 0 when empty.
  int max_arity() const;
  // Members of size k, as a relation.
  Relation layer(int k) const;

  // Relation whose members are the complements of this one's.
  Relation complement_image() const;
  // Relation whose members are the images x^g.
  Relation image(const Permutation& g) const;

  bool is_invariant_under(const Permutation& g) const;
  bool is_invariant_under(const PermutationGroup& g) const;

  // True when the relation is a union of complete layers (empty included);
  // such relations constrain nothing.
  bool is_trivial() const;

  Relation union_with(const Relation& other) const;

  friend bool operator==(const Relation&, const Relation&) = default;

 private:
  int degree_ = 1;
  std::vector<mask_t> members_;
};

// Conversions for file formats and reports (points 0-based here).
Relation relation_from_sets(int degree,
                            const std::vector<std::vector<int>>& sets);
std::vector<std::vector<int>> relation_to_sets(const Relation& r);

// The orbit x^G as a relation.
Relation orbit_relation(const PermutationGroup& g, mask_t seed);
Relation union_of_orbit_relations(const PermutationGroup& g,
                                  const std::vector<mask_t>& seeds);

}  // namespace relkit
