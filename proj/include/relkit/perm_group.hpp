#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "relkit/config.hpp"
#include "relkit/perm.hpp"

namespace relkit {

// Deterministic incremental Schreier-Sims.  Base points are taken in
// increasing natural order (smallest moved point first) unless a base is
// forced, so identical generator lists always produce identical chains.
class GroupBuilder {
 public:
  explicit GroupBuilder(int degree, std::vector<int> forced_base = {});

  int degree() const { return degree_; }

  // Adds g to the generated group; returns true if the group grew.
  bool add(const Permutation& g);

  bool contains(const Permutation& g) const;
  std::uint64_t order() const;  // throws error on uint64 overflow

  struct Level {
    int base_point;
    std::vector<Permutation> gens;      // generators fixing earlier base points
    std::vector<int> orbit;             // sorted ascending
    // transversal[p] = u with base_point^u = p, for p in orbit
    std::vector<Permutation> transversal_by_point;  // indexed by point
    std::vector<Permutation> inverse_by_point;
    std::vector<bool> in_orbit;

    const Permutation& rep(int point) const { return transversal_by_point[point]; }
    const Permutation& rep_inverse(int point) const { return inverse_by_point[point]; }
  };

  const std::vector<Level>& levels() const { return levels_; }
  const std::vector<Permutation>& generators() const { return input_gens_; }

 private:
  void rebuild_transversal(int level);
  // Returns (residue, level reached).
  std::pair<Permutation, int> sift(Permutation g) const;
  void insert_strong_generator(const Permutation& g, int level);
  void verify_level(int level);
  int pick_base_point(const Permutation& moves_something) ;

  int degree_;
  std::vector<int> forced_base_;
  std::size_t forced_used_ = 0;
  std::vector<Level> levels_;
  std::vector<Permutation> input_gens_;
};

// An immutable permutation group with its stabilizer chain.  Cheap to copy.
class PermutationGroup {
 public:
  // Trivial group of the given degree.
  explicit PermutationGroup(int degree);
  PermutationGroup(int degree, const std::vector<Permutation>& gens);
  explicit PermutationGroup(GroupBuilder&& builder);

  int degree() const;
  std::uint64_t order() const;
  bool is_trivial() const { return order() == 1; }
  bool contains(const Permutation& g) const;
  bool is_subgroup_of(const PermutationGroup& other) const;

  // Generators as supplied (identity dropped, duplicates collapsed).
  const std::vector<Permutation>& generators() const;

  const std::vector<GroupBuilder::Level>& levels() const;
  std::vector<int> base() const;

  // Orbits of the natural point action, each sorted, ordered by minimum.
  std::vector<std::vector<int>> point_orbits() const;
  std::vector<int> point_orbit(int point) const;
  bool is_transitive() const;

  // Visits every element exactly once (identity included).  Stops early if
  // the callback returns false.  Throws cap_exceeded if order() > cap.
  void for_each_element(const std::function<bool(const Permutation&)>& fn,
                        std::uint64_t cap = UINT64_MAX) const;
  std::vector<Permutation> elements(std::uint64_t cap) const;

  // Lexicographically least image tuple in the right coset (this)*g.
  // Requires a chain built on the full base 0..n-1 (see rebased()).
  Permutation min_coset_rep(const Permutation& g) const;

  // Same group, chain rebuilt on the forced base 0,1,...,n-1.
  PermutationGroup rebased_full() const;

  static PermutationGroup symmetric(int degree);
  static PermutationGroup alternating(int degree);
  static PermutationGroup cyclic(int degree);
  static PermutationGroup dihedral(int degree);  // on degree points, order 2*degree
  static PermutationGroup trivial(int degree);

 private:
  struct Data;
  std::shared_ptr<const Data> data_;
};

// Normal closure of <seeds> in G.
PermutationGroup normal_closure(const PermutationGroup& g,
                                const std::vector<Permutation>& seeds);

// Derived subgroup [G, G].
PermutationGroup derived_subgroup(const PermutationGroup& g);

bool is_solvable(const PermutationGroup& g);

enum class SymAltKind { Neither, Symmetric, Alternating };
SymAltKind sym_alt_kind(const PermutationGroup& g);

std::uint64_t factorial(int n);  // throws error on uint64 overflow

}  // namespace relkit
