#include "doctest.h"

#include <algorithm>
#include <set>

#include "relkit/error.hpp"
#include "relkit/perm_group.hpp"

#include "support.hpp"

using namespace relkit;

namespace {

PermutationGroup from_cycles(int degree, std::initializer_list<const char*> gens) {
  std::vector<Permutation> v;
  for (const char* g : gens) v.push_back(parse_permutation(g, degree));
  return PermutationGroup(degree, v);
}

}  // namespace

TEST_CASE("orders of tiny groups match the naive closure") {
  struct Case {
    int degree;
    std::vector<const char*> gens;
  };
  const std::vector<Case> cases = {
      {3, {"(1,2)", "(1,2,3)"}},
      {4, {"(1,2,3,4)"}},
      {4, {"(1,2)(3,4)", "(1,3)(2,4)"}},
      {5, {"(1,2,3,4,5)", "(2,3,5,4)"}},
      {6, {"(1,2,3,4,5,6)", "(2,6)(3,5)"}},
      {6, {"(1,2,3)", "(4,5,6)"}},
      {7, {"(1,2,3,4,5,6,7)", "(2,3,5)(4,7,6)"}},
  };
  for (const auto& c : cases) {
    std::vector<Permutation> gens;
    for (const char* g : c.gens) gens.push_back(parse_permutation(g, c.degree));
    PermutationGroup grp(c.degree, gens);
    CHECK(grp.order() == oracle::order(gens, c.degree));
    // membership agrees with the naive element set
    auto elems = oracle::group_elements(gens, c.degree);
    std::set<std::vector<std::uint8_t>> in_group;
    for (const auto& e : elems) in_group.insert(e.images());
    for (const auto& p : oracle::all_permutations(c.degree))
      CHECK(grp.contains(p) == (in_group.count(p.images()) > 0));
  }
}

TEST_CASE("F20 membership") {
  PermutationGroup f20 = from_cycles(5, {"(1,2,3,4,5)", "(2,3,5,4)"});
  CHECK(f20.order() == 20);
  CHECK(f20.contains(parse_permutation("(1,2)(3,5)", 5)));
  CHECK_FALSE(f20.contains(parse_permutation("(1,2)(3,4)", 5)));
  CHECK_FALSE(f20.contains(parse_permutation("(1,2)", 5)));
  CHECK(f20.is_transitive());
}

TEST_CASE("factory groups") {
  CHECK(PermutationGroup::symmetric(5).order() == 120);
  CHECK(PermutationGroup::alternating(5).order() == 60);
  CHECK(PermutationGroup::alternating(3).order() == 3);
  CHECK(PermutationGroup::cyclic(7).order() == 7);
  CHECK(PermutationGroup::dihedral(5).order() == 10);
  CHECK(PermutationGroup::dihedral(6).order() == 12);
  CHECK(PermutationGroup::trivial(4).order() == 1);
  CHECK(PermutationGroup::symmetric(1).order() == 1);
  CHECK(PermutationGroup::alternating(2).order() == 1);
}

TEST_CASE("M11 has order 7920") {
  PermutationGroup m11 =
      from_cycles(11, {"(1,2,3,4,5,6,7,8,9,10,11)", "(3,7,11,8)(4,10,5,6)"});
  CHECK(m11.order() == 7920);
  CHECK(m11.is_transitive());
  auto base = m11.base();
  std::uint64_t prod = 1;
  for (const auto& lv : m11.levels()) prod *= lv.orbit.size();
  CHECK(prod == 7920);
}

TEST_CASE("chain invariants") {
  for (const auto& g :
       {PermutationGroup::symmetric(6), PermutationGroup::dihedral(6),
        from_cycles(5, {"(1,2,3,4,5)", "(2,3,5,4)"}),
        from_cycles(6, {"(1,2,3)", "(4,5,6)"})}) {
    std::uint64_t prod = 1;
    for (const auto& lv : g.levels()) {
      prod *= lv.orbit.size();
      CHECK(std::is_sorted(lv.orbit.begin(), lv.orbit.end()));
      // transversal reps really map the base point into its orbit
      for (int p : lv.orbit) {
        CHECK(lv.rep(p)(lv.base_point) == p);
        CHECK((lv.rep(p) * lv.rep_inverse(p)).is_identity());
      }
    }
    CHECK(prod == g.order());
  }
}

TEST_CASE("point orbits") {
  PermutationGroup g = from_cycles(5, {"(1,2)", "(3,4,5)"});
  auto orbits = g.point_orbits();
  REQUIRE(orbits.size() == 2);
  CHECK(orbits[0] == std::vector<int>{0, 1});
  CHECK(orbits[1] == std::vector<int>{2, 3, 4});
  CHECK(g.point_orbit(3) == std::vector<int>{2, 3, 4});
  CHECK_FALSE(g.is_transitive());
  CHECK(PermutationGroup::trivial(3).point_orbits().size() == 3);
}

TEST_CASE("element iteration") {
  PermutationGroup f20 = from_cycles(5, {"(1,2,3,4,5)", "(2,3,5,4)"});
  std::set<std::vector<std::uint8_t>> seen;
  std::uint64_t count = 0;
  f20.for_each_element([&](const Permutation& p) {
    CHECK(f20.contains(p));
    seen.insert(p.images());
    ++count;
    return true;
  });
  CHECK(count == 20);
  CHECK(seen.size() == 20);

  count = 0;
  f20.for_each_element([&](const Permutation&) { return ++count < 5; });
  CHECK(count == 5);

  CHECK(f20.elements(20).size() == 20);
  CHECK_THROWS_AS(PermutationGroup::symmetric(5).elements(100), cap_exceeded);
}

TEST_CASE("subgroup relation") {
  auto s5 = PermutationGroup::symmetric(5);
  auto a5 = PermutationGroup::alternating(5);
  auto c5 = PermutationGroup::cyclic(5);
  auto f20 = from_cycles(5, {"(1,2,3,4,5)", "(2,3,5,4)"});
  CHECK(a5.is_subgroup_of(s5));
  CHECK(c5.is_subgroup_of(f20));
  CHECK(f20.is_subgroup_of(s5));
  CHECK_FALSE(f20.is_subgroup_of(a5));  // (2,3,5,4) is odd
  CHECK_FALSE(s5.is_subgroup_of(a5));
  CHECK(c5.is_subgroup_of(a5));
}

TEST_CASE("min coset representative") {
  auto c4 = PermutationGroup::cyclic(4).rebased_full();
  CHECK(c4.min_coset_rep(Permutation(4)).is_identity());
  // right coset C4*(0 1): least image tuple is [0,2,3,1]
  Permutation g = parse_permutation("(1,2)", 4);
  Permutation least = c4.min_coset_rep(g);
  CHECK(least == Permutation(std::vector<int>{0, 2, 3, 1}));
  // same answer from every coset member
  for (const auto& c : c4.elements(10)) CHECK(c4.min_coset_rep(c * g) == least);
  // cosets are distinguished
  CHECK(c4.min_coset_rep(parse_permutation("(1,2)(3,4)", 4)) != least);
}

TEST_CASE("normal closure and derived series") {
  auto s4 = PermutationGroup::symmetric(4);
  auto v = normal_closure(s4, {parse_permutation("(1,2)(3,4)", 4)});
  CHECK(v.order() == 4);
  auto a4 = derived_subgroup(s4);
  CHECK(a4.order() == 12);
  CHECK(derived_subgroup(a4).order() == 4);
  CHECK(derived_subgroup(v).order() == 1);
  CHECK(is_solvable(s4));
  CHECK(is_solvable(PermutationGroup::dihedral(7)));
  CHECK_FALSE(is_solvable(PermutationGroup::symmetric(5)));
  CHECK_FALSE(is_solvable(PermutationGroup::alternating(5)));
  CHECK(is_solvable(PermutationGroup::trivial(3)));
}

TEST_CASE("symmetric and alternating recognition") {
  CHECK(sym_alt_kind(PermutationGroup::symmetric(6)) == SymAltKind::Symmetric);
  CHECK(sym_alt_kind(PermutationGroup::alternating(6)) ==
        SymAltKind::Alternating);
  CHECK(sym_alt_kind(PermutationGroup::dihedral(6)) == SymAltKind::Neither);
  CHECK(sym_alt_kind(PermutationGroup::symmetric(2)) == SymAltKind::Symmetric);
  CHECK(sym_alt_kind(PermutationGroup::cyclic(3)) == SymAltKind::Alternating);
  CHECK(sym_alt_kind(PermutationGroup::symmetric(12)) == SymAltKind::Symmetric);
  CHECK(sym_alt_kind(PermutationGroup::alternating(12)) ==
        SymAltKind::Alternating);
}

TEST_CASE("rebased chains answer the same queries") {
  auto f20 = from_cycles(5, {"(1,2,3,4,5)", "(2,3,5,4)"});
  auto rebased = f20.rebased_full();
  CHECK(rebased.order() == 20);
  for (const auto& p : oracle::all_permutations(5))
    CHECK(rebased.contains(p) == f20.contains(p));
  // base points run in increasing order (what min_coset_rep relies on)
  auto base = rebased.base();
  CHECK(std::is_sorted(base.begin(), base.end()));
}

TEST_CASE("min coset representative is the true lexicographic minimum") {
  auto f20 = from_cycles(5, {"(1,2,3,4,5)", "(2,3,5,4)"}).rebased_full();
  auto members = oracle::group_elements(f20.generators(), 5);
  for (const auto& g : oracle::all_permutations(5)) {
    std::vector<std::uint8_t> best;
    for (const auto& c : members) {
      auto img = compose(c, g).images();
      if (best.empty() || img < best) best = img;
    }
    CHECK(f20.min_coset_rep(g).images() == best);
  }
}

TEST_CASE("builder add reports growth") {
  GroupBuilder b(4);
  CHECK(b.order() == 1);
  CHECK(b.add(parse_permutation("(1,2)", 4)));
  CHECK_FALSE(b.add(parse_permutation("(1,2)", 4)));
  CHECK(b.add(parse_permutation("(1,2,3,4)", 4)));
  CHECK(b.order() == 24);
  CHECK_FALSE(b.add(parse_permutation("(2,4)", 4)));
}

TEST_CASE("factorial overflow") {
  CHECK(factorial(20) == 2'432'902'008'176'640'000ULL);
  CHECK_THROWS_AS(factorial(21), relkit::error);
}

TEST_CASE("degenerate degrees") {
  CHECK_THROWS_AS(PermutationGroup(0), relkit::error);
  CHECK_THROWS_AS(PermutationGroup(65), relkit::error);
  CHECK(PermutationGroup(1).order() == 1);
}
