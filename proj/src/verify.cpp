#include "relkit/verify.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "relkit/blocks.hpp"
#include "relkit/catalog.hpp"
#include "relkit/closure.hpp"
#include "relkit/error.hpp"
#include "relkit/invariance.hpp"
#include "relkit/perm.hpp"
#include "relkit/perm_group.hpp"
#include "relkit/relation.hpp"
#include "relkit/subset_action.hpp"
#include "relkit/wreath.hpp"

namespace relkit {
namespace {

// Accumulates exact checks; the first failure is kept as the detail line.
struct Check {
  bool ok = true;
  int count = 0;
  int skipped = 0;
  std::string first_failure;

  void expect(bool condition, const std::string& what) {
    ++count;
    if (!condition && ok) {
      ok = false;
      first_failure = what;
    }
  }
  void skip(int n = 1) { skipped += n; }
};

std::uint64_t binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t r = 1;
  for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

// --- criterion 1: census lists per degree -----------------------------------

void criterion_census_lists(Check& c, VerifyLevel level, const Config& cfg) {
  const std::map<int, std::set<std::string>> expected = {
      {5, {"D10@5"}},
      {6, {"PSL(2,5)@6"}},
      {7, {"F42@7", "PSL(3,2)@7"}},
      {8, {"AGammaL(1,8)@8", "AGL(3,2)@8", "PSL(2,7)@8", "PGL(2,7)@8"}},
      {9, {"ASL(2,3)@9", "AGL(2,3)@9", "3^2:D8@9", "AGammaL(1,9)@9"}},
      {10,
       {"S5@10", "PSL(2,9)@10", "PGL(2,9)@10", "PSigmaL(2,9)@10", "M10@10",
        "PGammaL(2,9)@10"}},
  };
  int max_degree = level == VerifyLevel::quick ? 8 : 10;
  std::map<int, std::set<std::string>> actual;
  for (const CatalogEntry& e : catalog()) {
    if (e.degree < 5 || e.degree > max_degree) continue;
    if (!e.primitive || is_set_transitive(e.group, cfg)) continue;
    if (regular_set_census(e.group, cfg).sizes_with_regular.empty())
      actual[e.degree].insert(e.name);
  }
  for (const auto& [degree, names] : expected) {
    if (degree > max_degree) {
      c.skip();
      continue;
    }
    std::ostringstream what;
    what << "degree " << degree << " no-regular-set list";
    for (const std::string& n : actual[degree])
      if (!names.count(n)) what << " +" << n;
    for (const std::string& n : names)
      if (!actual[degree].count(n)) what << " -" << n;
    c.expect(actual[degree] == names, what.str());
  }
}

// --- criterion 2: set-transitive groups --------------------------------------

void criterion_set_transitive(Check& c, VerifyLevel level, const Config& cfg) {
  int max_degree = level == VerifyLevel::quick ? 8 : 10;
  std::set<std::string> expected = {"F20@5", "PGL(2,5)@6"};
  if (max_degree >= 9) {
    expected.insert("PSL(2,8)@9");
    expected.insert("PGammaL(2,8)@9");
  } else {
    c.skip(2);
  }
  std::set<std::string> actual;
  for (const CatalogEntry& e : catalog()) {
    if (e.degree > max_degree || !e.primitive) continue;
    if (is_set_transitive(e.group, cfg)) actual.insert(e.name);
  }
  c.expect(actual == expected, "set-transitive list mismatch");
}

// --- criterion 3: orbit-equivalent pairs --------------------------------------

void criterion_orbit_equivalent_pairs(Check& c, VerifyLevel level,
                                      const Config& cfg) {
  struct Pair {
    const char* small;
    const char* big;
    std::uint64_t index;
  };
  for (const Pair& p : {Pair{"C5@5", "D10@5", 2},
                        Pair{"AGL(1,9)@9", "AGammaL(1,9)@9", 2},
                        Pair{"PGL(2,9)@10", "PGammaL(2,9)@10", 2}}) {
    PermutationGroup small = load(p.small);
    if (level == VerifyLevel::quick && small.degree() > 8) {
      c.skip();
      continue;
    }
    PermutationGroup big = load(p.big);
    for (int k = 0; k <= small.degree() / 2; ++k)
      c.expect(k_orbit_equivalent(small, big, k),
               std::string(p.small) + " vs " + p.big + " at k=" +
                   std::to_string(k));
    PermutationGroup star = orbit_closure(small, cfg);
    c.expect(star.order() == small.order() * p.index,
             std::string("c(") + p.small + ") != " + std::to_string(p.index));
    c.expect(big.is_subgroup_of(star) && star.order() == big.order(),
             std::string("closure of ") + p.small + " is not " + p.big);
  }
  if (level == VerifyLevel::quick) {
    c.skip();
    return;
  }
  PermutationGroup l28 = load("PSL(2,8)@9");
  PermutationGroup star = orbit_closure(l28, cfg);
  c.expect(star.order() == l28.order() * 720, "c(PSL(2,8)@9) != 720");
  c.expect(star.order() == factorial(9), "closure of PSL(2,8)@9 is not Sym(9)");
}

// --- criterion 4: Klein-group separation --------------------------------------

void criterion_klein_separation(Check& c, VerifyLevel, const Config& cfg) {
  PermutationGroup v4 = load("V4@4");
  c.expect(orbit_closure(v4, cfg).order() == 4, "V4@4 is not orbit closed");
  RelationGroupReport rc = relation_closure(v4, cfg);
  c.expect(rc.exact, "relation_closure(V4@4) not exhaustive");
  c.expect(rc.r_of_g == 2, "r(V4@4) != 2");
  c.expect(!rc.is_relation_group, "V4@4 wrongly a relation group");
  c.expect(is_relation_group(load("D8@4"), cfg), "D8@4 not a relation group");
}

// --- criterion 5: basic-lemma subgroup pipeline -------------------------------

void criterion_basic_lemma(Check& c, VerifyLevel level, const Config& cfg) {
  if (level == VerifyLevel::quick) {
    c.skip(6);
    return;
  }
  PermutationGroup h = load("AGL(1,11)@11");

  // a defining relation for h: the first small-layer orbit whose invariance
  // group is h itself
  std::optional<Relation> defining;
  int used_k = 0;
  for (int k = 3; k <= 5 && !defining; ++k) {
    OrbitPartition orbits = orbits_on_k_subsets(h, k);
    for (mask_t rep : orbits.representatives) {
      Relation r = orbit_relation(h, rep);
      if (invariance_group(r, cfg).order() == h.order()) {
        defining = r;
        used_k = k;
        break;
      }
    }
  }
  c.expect(defining.has_value(), "no defining orbit relation for AGL(1,11)");
  if (!defining) return;

  RegularSetCensus census = regular_set_census(h, cfg);
  mask_t w = 0;
  for (int size : census.sizes_with_regular)
    if (size != used_k) {
      w = census.regular_sets(size, 1).at(0);
      break;
    }
  c.expect(w != 0, "no regular set of a fresh size for AGL(1,11)");
  if (w == 0) return;

  const Permutation& shift = h.generators()[0];
  const Permutation& scale = h.generators()[1];
  Permutation scale5 = scale;  // scale^5, an involution
  for (int i = 0; i < 4; ++i) scale5 = scale5 * scale;
  std::vector<std::pair<std::string, PermutationGroup>> sample;
  sample.emplace_back("C11", PermutationGroup(11, {shift}));
  sample.emplace_back("D22", PermutationGroup(11, {shift, scale5}));
  sample.emplace_back("F55", load("F55@11"));
  sample.emplace_back("C10", PermutationGroup(11, {scale}));
  sample.emplace_back("C5", PermutationGroup(11, {scale * scale}));
  sample.emplace_back("AGL(1,11)", h);
  c.expect(sample.size() >= 5, "subgroup sample too small");

  for (const auto& [name, g] : sample) {
    c.expect(g.is_subgroup_of(h), name + " not inside AGL(1,11)");
    Relation r = basic_lemma_construct(h, *defining, w, g, cfg);
    PermutationGroup back = invariance_group(r, g, cfg);
    c.expect(back.order() == g.order(),
             name + ": invariance order " + std::to_string(back.order()) +
                 " != " + std::to_string(g.order()));
  }
}

// --- criterion 6: wreath defining relations -----------------------------------

void criterion_wreath_defining(Check& c, VerifyLevel level, const Config& cfg) {
  if (level == VerifyLevel::quick) {
    c.skip(8);
    return;
  }
  PermutationGroup k = load("D10@5");
  Relation edges = orbit_relation(k, 0b00011);  // pentagon edges define D10
  c.expect(invariance_group(edges, cfg).order() == k.order(),
           "pentagon edges do not define D10");

  for (const char* lname : {"C2", "S2"}) {
    PermutationGroup l = load(lname);
    WreathAction wr = wreath_product(k, l);
    Relation block = rela_block_relation(k, edges, 2, cfg);
    Relation sigma(2, {mask_t{0b01}, mask_t{0b10}});
    Relation top = rela_top_relation(sigma, 5, 2);
    Relation combined = block.union_with(top);

    PermutationGroup inv = invariance_group(combined, wr.product, cfg);
    c.expect(inv.order() == wr.product.order(),
             std::string("G(R u R'') != D10 wr ") + lname);
    c.expect(wr.product.order() == 200,
             std::string("|D10 wr ") + lname + "| != 200");
    c.expect(combined.arities().back() == 5 * sigma.arities().back(),
             "max member size != d * max member size of the top relation");
  }
}

// --- criterion 7: wreath regular-set size formula ------------------------------

void criterion_wreath_formula(Check& c, VerifyLevel level, const Config& cfg) {
  struct Case {
    const char* kname;
    mask_t x;  // regular piece for K
  };
  for (const Case& cs : {Case{"C3", 0b001}, Case{"C5", 0b00011}}) {
    PermutationGroup k = load(cs.kname);
    if (level == VerifyLevel::quick && 2 * k.degree() > 8) {
      c.skip(2);
      continue;
    }
    PermutationGroup l = load("C2");
    int d = k.degree(), s = 2;
    int r_delta = std::popcount(cs.x), r_sigma = 1;
    mask_t w = regular_set_rela4(k, l, cs.x, r_sigma);
    int expected_size = r_sigma * d + (s - 2 * r_sigma) * (d - r_delta);
    c.expect(std::popcount(w) == expected_size,
             std::string(cs.kname) + " wr C2: |w| != formula value");
    WreathAction wr = wreath_product(k, l);
    c.expect(setwise_stabilizer(wr.product, w, cfg).order() == 1,
             std::string(cs.kname) + " wr C2: w is not regular");
  }
}

// --- criterion 8: wreath products that are not relation groups -----------------

void criterion_wreath_negative(Check& c, VerifyLevel level, const Config& cfg) {
  for (const char* lname : {"C2", "C3"}) {
    PermutationGroup l = load(lname);
    if (level == VerifyLevel::quick && 3 * l.degree() > 8) {
      c.skip(2);
      continue;
    }
    WreathAction wr = wreath_product(load("C3"), l);
    RelationGroupReport rc = relation_closure(wr.product, cfg);
    c.expect(rc.exact, std::string("relation_closure(C3 wr ") + lname +
                           ") not exhaustive");
    c.expect(rc.r_of_g > 1,
             std::string("C3 wr ") + lname + " wrongly a relation group");
  }
}

// --- criterion 9: property suites ----------------------------------------------

// 9a: orbit equivalence at layer l forces it at every layer k <= l with
// k + l <= n, over a deterministic 200-pair sample.
void suite_monotonicity(Check& c, const Config& cfg) {
  std::mt19937 rng(20260825);
  std::map<int, std::vector<PermutationGroup>> pool;
  for (const CatalogEntry& e : catalog()) {
    if (e.degree > 8) continue;
    pool[e.degree].push_back(e.group);
    // two random word-generated subgroups per entry
    const auto& gens = e.group.generators();
    for (int rep = 0; rep < 2; ++rep) {
      auto word = [&] {
        Permutation p(e.degree);
        int len = 1 + static_cast<int>(rng() % 4);
        for (int i = 0; i < len; ++i) p = p * gens[rng() % gens.size()];
        return p;
      };
      pool[e.degree].push_back(PermutationGroup(e.degree, {word(), word()}));
    }
  }
  std::vector<int> degrees;
  for (const auto& [degree, groups] : pool)
    if (groups.size() >= 2) degrees.push_back(degree);

  for (int pair = 0; pair < 200; ++pair) {
    int n = degrees[rng() % degrees.size()];
    const auto& groups = pool[n];
    const PermutationGroup& g = groups[rng() % groups.size()];
    const PermutationGroup& h = groups[rng() % groups.size()];
    for (int l = 0; l <= n; ++l)
      for (int k = 0; k <= std::min(l, n - l); ++k)
        if (!monotonicity_check(g, h, k, l)) {
          c.expect(false, "monotonicity failed at degree " + std::to_string(n) +
                              " k=" + std::to_string(k) +
                              " l=" + std::to_string(l));
          return;
        }
    c.expect(true, "");
  }
  (void)cfg;
}

// 9b: orbit sizes partition each layer, orbit times stabilizer is the group
// order, and the orbit count equals the average fixed-set count.
void suite_counting(Check& c, const Config& cfg) {
  for (const CatalogEntry& e : catalog()) {
    if (e.degree > 8) continue;
    int n = e.degree;
    std::vector<std::uint64_t> orbit_counts(n + 1, 0);
    OrbitPartition all = orbits_on_power_set(e.group);
    std::vector<std::uint64_t> layer_total(n + 1, 0);
    for (std::size_t i = 0; i < all.representatives.size(); ++i) {
      int k = std::popcount(all.representatives[i]);
      ++orbit_counts[k];
      layer_total[k] += all.orbit_sizes[i];
      PermutationGroup stab =
          setwise_stabilizer(e.group, all.representatives[i], cfg);
      c.expect(all.orbit_sizes[i] * stab.order() == e.order,
               e.name + ": orbit times stabilizer misses the group order");
    }
    for (int k = 0; k <= n; ++k)
      c.expect(layer_total[k] == binom(n, k),
               e.name + ": orbits do not partition layer " + std::to_string(k));

    // average number of fixed subsets per element, layer by layer
    std::vector<std::uint64_t> fixed(n + 1, 0);
    e.group.for_each_element(
        [&](const Permutation& p) {
          for (mask_t m = 0; m < (mask_t{1} << n); ++m)
            if (p.apply(m) == m) ++fixed[std::popcount(m)];
          return true;
        },
        cfg.element_iteration_cap);
    for (int k = 0; k <= n; ++k)
      c.expect(fixed[k] == orbit_counts[k] * e.order,
               e.name + ": fixed-set average misses the orbit count at k=" +
                   std::to_string(k));
  }
}

// 9c: census against a naive per-subset stabilizer scan.
void suite_census_naive(Check& c, const Config& cfg) {
  for (const CatalogEntry& e : catalog()) {
    if (e.degree > 6) continue;
    RegularSetCensus census = regular_set_census(e.group, cfg);
    std::vector<Permutation> elems = e.group.elements(cfg.element_iteration_cap);
    for (mask_t m = 0; m < (mask_t{1} << e.degree); ++m) {
      bool naive = true;
      for (const Permutation& p : elems)
        if (!p.is_identity() && p.apply(m) == m) {
          naive = false;
          break;
        }
      if (census.is_regular(m) != naive) {
        c.expect(false, e.name + ": census disagrees with naive scan");
        return;
      }
    }
    c.expect(true, "");
  }
}

// 9d: a primitive group is a relation group exactly when it is orbit closed,
// except PSL(2,7)@8: it is orbit closed, yet each of its two 14-point orbits
// on 4-sets is preserved by an order-1344 overgroup and the 42-orbit by
// PGL(2,7), so no single relation defines it (r = 2). A brute-force scan of
// all of Sym(8) in the unit tests freezes this fact.
void suite_primitive_equivalence(Check& c, VerifyLevel level,
                                 const Config& cfg) {
  int max_degree = level == VerifyLevel::quick ? 8 : 10;
  for (const CatalogEntry& e : catalog()) {
    if (!e.primitive || e.degree < 5 || e.degree > max_degree) continue;
    bool closed = orbit_closure(e.group, cfg).order() == e.order;
    RelationGroupReport rc = relation_closure(e.group, cfg);
    c.expect(rc.exact, e.name + ": relation_closure not exhaustive");
    if (e.name == "PSL(2,7)@8") {
      c.expect(closed && !rc.is_relation_group && rc.r_of_g == 2,
               "PSL(2,7)@8 no longer the known exception (closed, r=2)");
    } else {
      c.expect(rc.is_relation_group == closed,
               e.name + ": relation group status differs from orbit closure");
    }
  }
}

void criterion_property_suites(Check& c, VerifyLevel level, const Config& cfg) {
  suite_monotonicity(c, cfg);
  suite_counting(c, cfg);
  suite_census_naive(c, cfg);
  suite_primitive_equivalence(c, level, cfg);
}

// --- criterion 10: r(G) = c(G) * r(G*) ------------------------------------------

void criterion_closure_index_identity(Check& c, VerifyLevel level,
                                      const Config& cfg) {
  auto check_identity = [&](const std::string& name,
                            const PermutationGroup& g) {
    try {
      RelationGroupReport rc = relation_closure(g, cfg);
      if (!rc.exact) {
        c.skip();
        return;
      }
      PermutationGroup star = orbit_closure(g, cfg);
      RelationGroupReport rc_star = relation_closure(star, cfg);
      if (!rc_star.exact) {
        c.skip();
        return;
      }
      c.expect(rc.r_of_g == rc.c * rc_star.r_of_g,
               name + ": r(G) != c(G) * r(G*)");
    } catch (const cap_exceeded&) {
      c.skip();
    }
  };

  int max_degree = level == VerifyLevel::quick ? 8 : 64;
  for (const CatalogEntry& e : catalog()) {
    if (e.degree > max_degree) continue;
    check_identity(e.name, e.group);
  }
  const std::vector<std::pair<std::string, std::string>> pairs = {
      {"C2", "C2"},    {"C2", "C3"},    {"C2", "C4"},    {"C2", "S3"},
      {"C2", "V4@4"},  {"C2", "D8@4"},  {"C2", "A4"},    {"C2", "S4"},
      {"C3", "C2"},    {"S3", "C2"},    {"C4", "C2"},    {"V4@4", "C2"},
      {"D8@4", "C2"},  {"A4", "C2"},    {"S4", "C2"}};
  for (const auto& [kn, ln] : pairs) {
    WreathAction wr = wreath_product(load(kn), load(ln));
    check_identity(kn + " wr " + ln, wr.product);
  }
}

CriterionResult run_criterion(
    int number, const std::string& name, double budget, VerifyLevel level,
    const Config& cfg,
    const std::function<void(Check&, VerifyLevel, const Config&)>& body) {
  CriterionResult r;
  r.number = number;
  r.name = name;
  r.budget_seconds = budget;
  Check c;
  auto t0 = std::chrono::steady_clock::now();
  try {
    body(c, level, cfg);
  } catch (const std::exception& e) {
    c.expect(false, std::string("exception: ") + e.what());
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                            t0)
                  .count();
  r.checks_ok = c.ok;
  r.within_budget = r.seconds < budget;
  r.checks = c.count;
  r.skipped = c.skipped;
  r.detail = c.ok ? std::to_string(c.count) + " checks" : c.first_failure;
  return r;
}

}  // namespace

bool VerifyReport::all_passed() const {
  for (const CriterionResult& r : results)
    if (!r.passed()) return false;
  return !results.empty();
}

VerifyReport verify_battery(VerifyLevel level, const Config& cfg) {
  VerifyReport report;
  report.level = level;
  auto add = [&](int num, const std::string& name, double budget,
                 const std::function<void(Check&, VerifyLevel, const Config&)>&
                     body) {
    report.results.push_back(
        run_criterion(num, name, budget, level, cfg, body));
  };
  add(1, "regular-set census lists", 5, criterion_census_lists);
  add(2, "set-transitive groups", 5, criterion_set_transitive);
  add(3, "orbit-equivalent pairs", 60, criterion_orbit_equivalent_pairs);
  add(4, "Klein-group separation", 1, criterion_klein_separation);
  add(5, "basic-lemma subgroup pipeline", 120, criterion_basic_lemma);
  add(6, "wreath defining relations", 60, criterion_wreath_defining);
  add(7, "wreath regular-set formula", 5, criterion_wreath_formula);
  add(8, "wreath non-relation groups", 30, criterion_wreath_negative);
  add(9, "property suites", 600, criterion_property_suites);
  add(10, "closure index identity", 300, criterion_closure_index_identity);
  return report;
}

}  // namespace relkit
