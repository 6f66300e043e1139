#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "doctest.h"
#include "relkit/blocks.hpp"
#include "relkit/catalog.hpp"
#include "relkit/closure.hpp"
#include "relkit/error.hpp"
#include "relkit/invariance.hpp"
#include "relkit/relation.hpp"
#include "relkit/subset_action.hpp"
#include "relkit/wreath.hpp"
#include "support.hpp"

using namespace relkit;

namespace {

// Orders recomputed from closed forms, independent of the catalog table.
std::uint64_t pgl2(std::uint64_t q) { return (q + 1) * q * (q - 1); }
std::uint64_t psl3(std::uint64_t q) {
  std::uint64_t gl = (q * q * q - 1) * (q * q * q - q) * (q * q * q - q * q);
  return gl / (q - 1) / ((q - 1) % 3 == 0 ? 3 : 1);
}

bool in_rows(const std::vector<std::pair<int, std::string>>& rows,
             const CatalogEntry& e) {
  return std::find(rows.begin(), rows.end(),
                   std::make_pair(e.degree, e.name)) != rows.end();
}

}  // namespace

TEST_CASE("catalog orders match closed-form recomputation") {
  const std::map<std::string, std::uint64_t> expect = {
      {"V4@4", 4},
      {"D8@4", 8},
      {"C5@5", 5},
      {"D10@5", 10},
      {"F20@5", 5 * 4},
      {"PSL(2,5)@6", pgl2(5) / 2},
      {"PGL(2,5)@6", pgl2(5)},
      {"F21@7", 7 * 3},
      {"F42@7", 7 * 6},
      {"PSL(3,2)@7", psl3(2)},
      {"AGL(1,8)@8", 8 * 7},
      {"AGammaL(1,8)@8", 8 * 7 * 3},
      {"AGL(3,2)@8", 8 * psl3(2)},
      {"PSL(2,7)@8", pgl2(7) / 2},
      {"PGL(2,7)@8", pgl2(7)},
      {"AGL(1,9)@9", 9 * 8},
      {"AGammaL(1,9)@9", 9 * 8 * 2},
      {"3^2:D8@9", 9 * 8},
      {"3^2:Q8@9", 9 * 8},
      {"ASL(2,3)@9", 9 * 24},
      {"AGL(2,3)@9", 9 * 48},
      {"PSL(2,8)@9", pgl2(8)},
      {"PGammaL(2,8)@9", pgl2(8) * 3},
      {"S5@10", 120},
      {"PSL(2,9)@10", pgl2(9) / 2},
      {"PGL(2,9)@10", pgl2(9)},
      {"PSigmaL(2,9)@10", pgl2(9)},
      {"M10@10", pgl2(9)},
      {"PGammaL(2,9)@10", pgl2(9) * 2},
      {"F55@11", 11 * 5},
      {"AGL(1,11)@11", 11 * 10},
      {"PSL(2,11)@11", pgl2(11) / 2},
      {"M11@11", 11 * 10 * 9 * 8},
      {"PSL(2,11)@12", pgl2(11) / 2},
      {"PGL(2,11)@12", pgl2(11)},
      {"M11@12", 11 * 10 * 9 * 8},
      {"M12@12", 12 * 11 * 10 * 9 * 8},
      {"AGL(1,13)@13", 13 * 12},
      {"PSL(3,3)@13", psl3(3)},
  };
  const auto& all = catalog();
  REQUIRE(all.size() == expect.size());
  for (const CatalogEntry& e : all) {
    CAPTURE(e.name);
    REQUIRE(expect.count(e.name) == 1);
    CHECK(e.order == expect.at(e.name));
    CHECK(e.group.order() == e.order);
    CHECK(e.group.degree() == e.degree);
    // the @ suffix states the degree
    auto at = e.name.rfind('@');
    REQUIRE(at != std::string::npos);
    CHECK(std::stoi(e.name.substr(at + 1)) == e.degree);
    CHECK(is_primitive(e.group) == e.primitive);
    CHECK(sym_alt_kind(e.group) == SymAltKind::Neither);
  }
}

TEST_CASE("small entries recount by brute-force closure of generators") {
  for (const CatalogEntry& e : catalog()) {
    if (e.order > 300) continue;
    CAPTURE(e.name);
    CHECK(oracle::order(e.group.generators(), e.degree) == e.order);
  }
}

TEST_CASE("load resolves catalog names, family names, and rejects junk") {
  CHECK(load("F42@7").order() == 42);
  CHECK(load("C7").degree() == 7);
  CHECK(load("C7@7").order() == 7);
  CHECK(load("D14@7").order() == 14);
  CHECK(load("D14@7").degree() == 7);
  CHECK(load("S6").order() == 720);
  CHECK(load("A6@6").order() == 360);

  // the catalog name wins over the family reading of "S5@10"
  CHECK(load("S5@10").degree() == 10);
  CHECK(load("S5@10").order() == 120);
  CHECK(load("S5@5").degree() == 5);
  CHECK(load("S5").degree() == 5);

  CHECK_THROWS_WITH_AS(load("Q8"), doctest::Contains("unknown catalog name"),
                       error);
  CHECK_THROWS_WITH_AS(load("D7"), doctest::Contains("unknown"), error);
  CHECK_THROWS_WITH_AS(load("C0"), doctest::Contains("unknown"), error);
  CHECK_THROWS_WITH_AS(load("C100"), doctest::Contains("unknown"), error);
  CHECK_THROWS_WITH_AS(load("D14@8"),
                       doctest::Contains("degree suffix does not match"),
                       error);
}

TEST_CASE("interface-required names are present") {
  for (const char* name :
       {"D10@5", "F20@5", "PSL(2,5)@6", "F42@7", "PSL(3,2)@7", "AGL(1,8)@8",
        "PSL(2,7)@8", "AGL(2,3)@9", "PGammaL(2,9)@10", "M11@11",
        "PSL(2,11)@11", "AGL(1,11)@11", "AGL(1,13)@13"}) {
    CAPTURE(name);
    CHECK(catalog_has(name));
  }
  CHECK_FALSE(catalog_has("C7"));  // family names are not entries
}

TEST_CASE("the three primitive order-72 groups at degree nine differ") {
  PermutationGroup a = load("AGL(1,9)@9");
  PermutationGroup d = load("3^2:D8@9");
  PermutationGroup q = load("3^2:Q8@9");
  CHECK_FALSE(a.is_subgroup_of(d));
  CHECK_FALSE(a.is_subgroup_of(q));
  CHECK_FALSE(d.is_subgroup_of(q));

  // only the first contains an element of order eight
  auto has_8_cycle = [](const PermutationGroup& g) {
    bool found = false;
    g.for_each_element([&](const Permutation& p) {
      auto lens = p.cycle_lengths();
      found = std::find(lens.begin(), lens.end(), 8) != lens.end();
      return !found;
    });
    return found;
  };
  CHECK(has_8_cycle(a));
  CHECK_FALSE(has_8_cycle(d));
  CHECK_FALSE(has_8_cycle(q));

  LinkAMembership ma = a_membership(a);
  LinkAMembership md = a_membership(d);
  LinkAMembership mq = a_membership(q);
  CHECK(ma.is_explicit_small);
  CHECK_FALSE(md.is_explicit_small);
  CHECK_FALSE(mq.is_explicit_small);
  CHECK_FALSE(ma.in_L_NR);
  CHECK(md.in_L_NR);
  CHECK_FALSE(mq.in_L_NR);
  CHECK(ma.in_A);
  CHECK(md.in_A);
  CHECK_FALSE(mq.in_A);
}

TEST_CASE("degree-ten family around PSL(2,9)") {
  PermutationGroup psl = load("PSL(2,9)@10");
  PermutationGroup pgl = load("PGL(2,9)@10");
  PermutationGroup psig = load("PSigmaL(2,9)@10");
  PermutationGroup m10 = load("M10@10");
  PermutationGroup pgam = load("PGammaL(2,9)@10");

  CHECK(psl.is_subgroup_of(pgl));
  CHECK(psl.is_subgroup_of(psig));
  CHECK(psl.is_subgroup_of(m10));
  CHECK(pgl.is_subgroup_of(pgam));
  CHECK(psig.is_subgroup_of(pgam));
  CHECK(m10.is_subgroup_of(pgam));
  CHECK_FALSE(pgl.is_subgroup_of(psig));
  CHECK_FALSE(pgl.is_subgroup_of(m10));
  CHECK_FALSE(psig.is_subgroup_of(m10));

  // exactly one of the three index-2 extensions is orbit-open
  CHECK(orbit_closure(pgl).order() == 1440);
  CHECK(orbit_closure(psig).order() == 720);
  CHECK(orbit_closure(m10).order() == 720);
  CHECK(orbit_closure(psl).order() == 360);
  CHECK(orbit_closure(load("S5@10")).order() == 120);
}

TEST_CASE("expected lists are re-derived, never trusted") {
  const ExpectedLists& lists = expected_lists();
  for (const CatalogEntry& e : catalog()) {
    CAPTURE(e.name);
    bool st = is_set_transitive(e.group);
    CHECK(st == in_rows(lists.set_transitive, e));

    RegularSetCensus census = regular_set_census(e.group);
    bool nr = e.primitive && !st && census.sizes_with_regular.empty();
    CHECK(nr == in_rows(lists.no_regular_set, e));

    if (e.degree <= 10 && e.primitive && !st) {
      bool open = orbit_closure(e.group).order() != e.order;
      CHECK(open == in_rows(lists.not_orbit_closed, e));
    }
  }
  // the closure sweep above covered every orbit-equivalence row
  for (const auto& row : lists.not_orbit_closed) CHECK(row.first <= 10);
  CHECK(lists.set_transitive.size() == 4);
  CHECK(lists.not_orbit_closed.size() == 6);
  CHECK(lists.no_regular_set.size() == 24);
}

TEST_CASE("orbit closures land on the named larger entries") {
  auto closes_to = [](const char* small, const char* big) {
    CAPTURE(small);
    PermutationGroup s = load(small);
    PermutationGroup b = load(big);
    PermutationGroup star = orbit_closure(s);
    CHECK(star.order() == b.order());
    CHECK(b.is_subgroup_of(star));
    CHECK(s.is_subgroup_of(b));
  };
  closes_to("C5@5", "D10@5");
  closes_to("AGL(1,8)@8", "AGL(3,2)@8");
  closes_to("AGammaL(1,8)@8", "AGL(3,2)@8");
  closes_to("AGL(1,9)@9", "AGammaL(1,9)@9");
  closes_to("ASL(2,3)@9", "AGL(2,3)@9");
  closes_to("PGL(2,9)@10", "PGammaL(2,9)@10");
}

TEST_CASE("sporadic actions rebuild from their invariant structures") {
  PermutationGroup l2 = load("PSL(2,11)@11");
  OrbitPartition o3 = orbits_on_k_subsets(l2, 3);
  std::vector<std::uint64_t> sizes(o3.orbit_sizes);
  std::sort(sizes.begin(), sizes.end());
  CHECK(sizes == std::vector<std::uint64_t>{55, 110});
  for (std::size_t i = 0; i < o3.orbit_sizes.size(); ++i)
    if (o3.orbit_sizes[i] == 55) {
      PermutationGroup back =
          invariance_group(orbit_relation(l2, o3.representatives[i]));
      CHECK(back.order() == 660);
      CHECK(l2.is_subgroup_of(back));
    }

  PermutationGroup m11_12 = load("M11@12");
  OrbitPartition o5 = orbits_on_k_subsets(m11_12, 5);
  sizes = o5.orbit_sizes;
  std::sort(sizes.begin(), sizes.end());
  CHECK(sizes == std::vector<std::uint64_t>{132, 660});
  for (std::size_t i = 0; i < o5.orbit_sizes.size(); ++i)
    if (o5.orbit_sizes[i] == 132) {
      PermutationGroup back =
          invariance_group(orbit_relation(m11_12, o5.representatives[i]));
      CHECK(back.order() == 7920);
      CHECK(m11_12.is_subgroup_of(back));
    }

  // transitivity depth: M11 is 4-transitive, M12 is 5-transitive
  for (int k = 1; k <= 4; ++k)
    CHECK(orbits_on_k_subsets(load("M11@11"), k).orbit_count() == 1);
  for (int k = 1; k <= 5; ++k)
    CHECK(orbits_on_k_subsets(load("M12@12"), k).orbit_count() == 1);

  // the two PSL(2,11) actions have different regular-set profiles
  CHECK(regular_set_census(load("PSL(2,11)@11")).sizes_with_regular.empty());
  CHECK(regular_set_census(load("PSL(2,11)@12")).sizes_with_regular ==
        std::vector<int>{5, 7});
}
