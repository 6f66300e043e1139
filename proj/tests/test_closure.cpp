#include "doctest.h"

#include <map>
#include <set>
#include <vector>

#include "relkit/closure.hpp"
#include "relkit/error.hpp"
#include "relkit/subset_action.hpp"

#include "support.hpp"

using namespace relkit;

namespace {

PermutationGroup from_cycles(int degree, std::initializer_list<const char*> gens) {
  std::vector<Permutation> v;
  for (const char* g : gens) v.push_back(parse_permutation(g, degree));
  return PermutationGroup(degree, v);
}

PermutationGroup f20() { return from_cycles(5, {"(1,2,3,4,5)", "(2,3,5,4)"}); }
PermutationGroup v4() { return from_cycles(4, {"(1,2)(3,4)", "(1,3)(2,4)"}); }
PermutationGroup pgl25() {
  // x+1, 2x, 1/x on the projective line over GF(5); point 6 is infinity
  return from_cycles(6, {"(1,2,3,4,5)", "(2,3,5,4)", "(1,6)(3,4)"});
}

// All of Sym(n) preserving every g-orbit on k-subsets, by raw enumeration.
std::set<std::vector<std::uint8_t>> naive_k_closure(const PermutationGroup& g,
                                                    int k) {
  int n = g.degree();
  auto elems = oracle::group_elements(g.generators(), n);
  std::map<mask_t, mask_t> rep;  // mask -> least member of its orbit
  for (mask_t m = 0; m < (mask_t{1} << n); ++m) {
    if (popcount(m) != k) continue;
    auto orb = oracle::subset_orbit(elems, m);
    rep[m] = *orb.begin();
  }
  std::set<std::vector<std::uint8_t>> out;
  for (const auto& p : oracle::all_permutations(n)) {
    bool ok = true;
    for (const auto& [m, r] : rep)
      if (rep.at(p.apply(m)) != r) {
        ok = false;
        break;
      }
    if (ok) out.insert(p.images());
  }
  return out;
}

}  // namespace

TEST_CASE("k-orbit equivalence") {
  auto c5 = PermutationGroup::cyclic(5);
  auto d10 = PermutationGroup::dihedral(5);
  CHECK(k_orbit_equivalent(c5, d10, 2));
  CHECK(k_orbit_equivalent(c5, d10, 1));
  CHECK(!k_orbit_equivalent(c5, PermutationGroup::symmetric(5), 2));
  CHECK(k_orbit_equivalent(c5, c5, 2));

  auto d8 = PermutationGroup::dihedral(4);
  CHECK(k_orbit_equivalent(v4(), d8, 1));
  CHECK(!k_orbit_equivalent(v4(), d8, 2));

  CHECK_THROWS_AS(k_orbit_equivalent(c5, PermutationGroup::cyclic(6), 2),
                  precondition_error);
  CHECK_THROWS_AS(k_orbit_equivalent(c5, d10, 6), precondition_error);
}

TEST_CASE("k-closure of small groups") {
  auto c5 = PermutationGroup::cyclic(5);
  auto cl2 = k_closure(c5, 2);
  CHECK(cl2.order() == 10);  // the dihedral group on the pentagon
  CHECK(PermutationGroup::dihedral(5).is_subgroup_of(cl2));

  // k and n-k give the same group
  CHECK(k_closure(c5, 3).order() == 10);

  // closing an already closed group changes nothing
  CHECK(k_closure(PermutationGroup::dihedral(5), 2).order() == 10);

  // k = 0 and single-orbit layers constrain nothing
  CHECK(k_closure(c5, 0).order() == 120);
  CHECK(k_closure(c5, 1).order() == 120);

  CHECK(k_closure(PermutationGroup::symmetric(5), 2).order() == 120);
}

TEST_CASE("set-transitive groups close to the symmetric group") {
  CHECK(pgl25().order() == 120);
  CHECK(k_closure(f20(), 2).order() == 120);
  CHECK(k_closure(pgl25(), 2).order() == 720);
  CHECK(k_closure(pgl25(), 3).order() == 720);
}

TEST_CASE("degree cap only gates the search path") {
  auto c11 = PermutationGroup::cyclic(11);
  CHECK_THROWS_AS(k_closure(c11, 2), cap_exceeded);
  try {
    k_closure(c11, 2);
  } catch (const cap_exceeded& e) {
    CHECK(e.cap_name == "closure_degree");
  }
  // single orbit: no search, no cap
  CHECK(k_closure(PermutationGroup::symmetric(11), 3).order() ==
        factorial(11));
  Config big;
  big.closure_max_degree = 11;
  CHECK(k_closure(c11, 2, big).order() == 22);
}

TEST_CASE("k-closure matches raw enumeration") {
  std::vector<PermutationGroup> groups{
      PermutationGroup::cyclic(4),     v4(),
      PermutationGroup::dihedral(4),   PermutationGroup::cyclic(5),
      f20(),                           PermutationGroup::cyclic(6),
      PermutationGroup::dihedral(6),   pgl25(),
      from_cycles(6, {"(1,2,3)", "(4,5,6)"})};
  for (const auto& g : groups) {
    int n = g.degree();
    for (int k = 0; k <= n / 2; ++k) {
      auto lib = k_closure(g, k);
      auto naive = naive_k_closure(g, k);
      CHECK(lib.order() == naive.size());
      bool contained = true;
      lib.for_each_element([&](const Permutation& p) {
        contained = contained && naive.count(p.images()) > 0;
        return contained;
      });
      CHECK(contained);
    }
  }
}

TEST_CASE("orbit closure and closure reports") {
  auto rep = closure_report(PermutationGroup::cyclic(5));
  CHECK(rep.degree == 5);
  CHECK(rep.group_order == 5);
  CHECK(rep.star_order == 10);
  CHECK(rep.c == 2);
  CHECK(!rep.orbit_closed);
  CHECK(rep.k_closure_orders ==
        std::map<int, std::uint64_t>{{0, 120}, {1, 120}, {2, 10}});
  CHECK(orbit_closure(rep.star).order() == 10);  // idempotent

  auto vrep = closure_report(v4());
  CHECK(vrep.star_order == 4);
  CHECK(vrep.c == 1);
  CHECK(vrep.orbit_closed);

  // the orders shrink (weakly) as k grows toward n/2
  for (const auto& g : {PermutationGroup::cyclic(6), f20(),
                        PermutationGroup::dihedral(6)}) {
    auto r = closure_report(g);
    std::uint64_t prev = UINT64_MAX;
    for (const auto& [k, ord] : r.k_closure_orders) {
      CHECK(ord <= prev);
      prev = ord;
    }
    CHECK(r.star_order == r.k_closure_orders.rbegin()->second);
    CHECK(r.star_order % r.group_order == 0);
  }
}

TEST_CASE("orbit closure matches raw enumeration") {
  for (const auto& g : {PermutationGroup::cyclic(5), v4(),
                        PermutationGroup::cyclic(6),
                        from_cycles(5, {"(1,2,3)"})}) {
    int n = g.degree();
    auto star = orbit_closure(g);
    auto elems = oracle::group_elements(g.generators(), n);
    std::uint64_t naive = 0;
    auto orbits = oracle::power_set_orbits(elems, n);
    std::map<mask_t, mask_t> rep;
    for (const auto& [r, sz] : orbits)
      for (mask_t m : oracle::subset_orbit(elems, r)) rep[m] = r;
    for (const auto& p : oracle::all_permutations(n)) {
      bool ok = true;
      for (mask_t m = 0; ok && m < (mask_t{1} << n); ++m)
        ok = rep.at(p.apply(m)) == rep.at(m);
      if (ok) ++naive;
    }
    CHECK(star.order() == naive);
  }
}

TEST_CASE("monotonicity of orbit equivalence") {
  auto c5 = PermutationGroup::cyclic(5);
  auto d10 = PermutationGroup::dihedral(5);
  CHECK(monotonicity_check(c5, d10, 1, 2));
  CHECK(monotonicity_check(v4(), PermutationGroup::dihedral(4), 1, 2));
  std::vector<PermutationGroup> degree6{
      PermutationGroup::cyclic(6), PermutationGroup::dihedral(6), pgl25(),
      PermutationGroup::alternating(6), from_cycles(6, {"(1,2,3)", "(4,5,6)"})};
  for (const auto& g : degree6)
    for (const auto& h : degree6)
      for (int l = 0; l <= 3; ++l)
        for (int k = 0; k <= l; ++k)
          CHECK(monotonicity_check(g, h, k, l));
  CHECK_THROWS_AS(monotonicity_check(c5, d10, 2, 1), precondition_error);
  CHECK_THROWS_AS(monotonicity_check(c5, d10, 3, 4), precondition_error);
}
