#include "doctest.h"

#include "relkit/error.hpp"
#include "relkit/perm.hpp"

#include "support.hpp"

using namespace relkit;

TEST_CASE("composition is left to right") {
  // (0 1) then (1 2): 0 -> 1 -> 2, 1 -> 0 -> 0, 2 -> 2 -> 1.
  Permutation p(std::vector<int>{1, 0, 2});
  Permutation q(std::vector<int>{0, 2, 1});
  Permutation r = compose(p, q);
  CHECK(r == Permutation(std::vector<int>{2, 0, 1}));
  CHECK((p * q) == r);
  CHECK(r(0) == 2);
  CHECK((q * p) == Permutation(std::vector<int>{1, 2, 0}));
}

TEST_CASE("identity and inverse") {
  Permutation id(5);
  CHECK(id.is_identity());
  CHECK(id.degree() == 5);
  Permutation p = parse_permutation("(1,2,3)(4,5)");
  CHECK_FALSE(p.is_identity());
  CHECK((p * p.inverse()).is_identity());
  CHECK((p.inverse() * p).is_identity());
  CHECK(p.inverse() == parse_permutation("(1,3,2)(4,5)"));
}

TEST_CASE("cycle notation parsing") {
  Permutation p = parse_permutation("(1,2,3)(4,5)");
  CHECK(p.degree() == 5);
  CHECK(p(0) == 1);
  CHECK(p(1) == 2);
  CHECK(p(2) == 0);
  CHECK(p(3) == 4);
  CHECK(p(4) == 3);

  CHECK(parse_permutation("(1 2 3)(4 5)") == p);
  CHECK(parse_permutation("( 1, 2 ,3 ) (4,5)") == p);
  CHECK(parse_permutation("()").is_identity());
  CHECK(parse_permutation("()", 4).degree() == 4);
  CHECK(parse_permutation("(1,2)", 6).degree() == 6);

  Permutation q = parse_permutation("(1,2)@4");
  CHECK(q.degree() == 4);
  auto loose = parse_permutation_loose("(1,2)@4");
  CHECK(loose.declared_degree == 4);
  CHECK_FALSE(parse_permutation_loose("(1,2)").declared_degree.has_value());
}

TEST_CASE("cycle notation errors carry a position") {
  CHECK_THROWS_AS(parse_permutation("(1,2"), parse_error);
  CHECK_THROWS_AS(parse_permutation("(0,1)"), parse_error);
  CHECK_THROWS_AS(parse_permutation("(1,1)"), parse_error);
  CHECK_THROWS_AS(parse_permutation("(1,2)(2,3)"), parse_error);
  CHECK_THROWS_AS(parse_permutation("xyz"), parse_error);
  CHECK_THROWS_AS(parse_permutation("(1,2)@1"), parse_error);  // degree < max point
  try {
    parse_permutation("(1,2");
    CHECK(false);
  } catch (const parse_error& e) {
    CHECK(e.pos != parse_error::npos);
  }
}

TEST_CASE("cycle string round trip") {
  for (const char* text : {"(1,2,3)(4,5)", "(1,5)(2,4)", "()", "(2,3)"}) {
    Permutation p = parse_permutation(text);
    CHECK(parse_permutation(to_cycle_string(p)) == p);
  }
  CHECK(to_cycle_string(parse_permutation("(1,2,3)(4,5)")) == "(1,2,3)(4,5)");
  CHECK(to_cycle_string(Permutation(3)) == "()");
}

TEST_CASE("mask action") {
  Permutation p = parse_permutation("(1,2,3)");  // 0->1->2->0
  CHECK(p.apply(0b011) == 0b110);                // {0,1} -> {1,2}
  CHECK(p.apply(0) == 0);
  CHECK(p.apply(0b111) == 0b111);
  Permutation q = parse_permutation("(1,2)(3,4)");
  CHECK(q.apply(0b0101) == 0b1010);
}

TEST_CASE("cycle structure") {
  Permutation p = parse_permutation("(1,2,3)(4,5)", 6);
  CHECK(p.cycle_count() == 3);  // 3-cycle, 2-cycle, fixed point
  auto masks = p.cycle_masks();
  REQUIRE(masks.size() == 3);
  mask_t all = 0;
  for (mask_t m : masks) all |= m;
  CHECK(all == full_mask(6));
  auto lens = p.cycle_lengths();
  CHECK(lens == std::vector<int>{3, 2, 1});
  CHECK(Permutation(4).cycle_count() == 4);
}

TEST_CASE("parity") {
  CHECK(parse_permutation("(1,2,3)").is_even());
  CHECK_FALSE(parse_permutation("(1,2)").is_even());
  CHECK(parse_permutation("(1,2)(3,4)").is_even());
  CHECK_FALSE(parse_permutation("(1,2,3,4)").is_even());
  CHECK(Permutation(7).is_even());
}

TEST_CASE("conjugate and commutator match their formulas") {
  for (const auto& p : oracle::all_permutations(4))
    for (const auto& q : oracle::all_permutations(4)) {
      CHECK(conjugate(p, q) == compose(compose(q.inverse(), p), q));
      CHECK(commutator(p, q) ==
            compose(compose(p.inverse(), q.inverse()), compose(p, q)));
    }
}

TEST_CASE("extension by fixed points") {
  Permutation p = parse_permutation("(1,2)");
  Permutation e = p.extended(5);
  CHECK(e.degree() == 5);
  CHECK(e(0) == 1);
  CHECK(e(4) == 4);
  CHECK_THROWS_AS(e.extended(2), relkit::error);
}

TEST_CASE("image table constructor validates") {
  CHECK_THROWS_AS(Permutation(std::vector<int>{0, 0, 1}), relkit::error);
  CHECK_THROWS_AS(Permutation(std::vector<int>{0, 3, 1}), relkit::error);
}
