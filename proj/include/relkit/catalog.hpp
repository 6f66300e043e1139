#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "relkit/perm_group.hpp"

namespace relkit {

// One verified small-degree group.  Entries are built from arithmetic
// constructions (affine and projective actions over small fields, matrix
// actions on projective planes) or, where no clean formula exists, computed
// at load time (invariance groups of designs, coset actions).  Declared
// order, primitivity, and solvability are re-checked when the entry is
// built, so a catalog group is never a trusted literal.
struct CatalogEntry {
  std::string name;  // construction @ degree, e.g. "F42@7"
  int degree = 0;
  std::uint64_t order = 0;
  bool primitive = false;
  bool solvable = false;
  PermutationGroup group;
};

// All entries, degrees 4 through 13, built and verified once per process.
const std::vector<CatalogEntry>& catalog();

// True when the name is a catalog entry (family names do not count).
bool catalog_has(const std::string& name);

// A catalog entry by name, or a family group: C<n>, S<n>, A<n> (natural
// action on n points) and D<m> with m even (dihedral of order m on m/2
// points), each optionally suffixed with @<degree>, which must match.
// Throws error for unknown names and for entries failing verification.
PermutationGroup load(const std::string& name);

// (degree, catalog name) rows of the three exceptional lists for degrees
// up to 13, among primitive groups other than Sym and Alt: the proper
// set-transitive groups, the groups whose orbit closure is a strictly
// larger group (excluding the set-transitive ones), and the groups with no
// regular set.  Tests re-derive every row by computation; this fixture only
// states what to expect.
struct ExpectedLists {
  std::vector<std::pair<int, std::string>> set_transitive;
  std::vector<std::pair<int, std::string>> not_orbit_closed;
  std::vector<std::pair<int, std::string>> no_regular_set;
};
const ExpectedLists& expected_lists();

}  // namespace relkit
