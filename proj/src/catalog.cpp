#include "relkit/catalog.hpp"

#include <array>
#include <cctype>
#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "relkit/blocks.hpp"
#include "relkit/config.hpp"
#include "relkit/error.hpp"
#include "relkit/invariance.hpp"
#include "relkit/perm.hpp"
#include "relkit/relation.hpp"

namespace relkit {
namespace {

// ---- small-field arithmetic ----------------------------------------------

// A finite field on {0..q-1}; 0 and 1 are the additive and multiplicative
// identities in every representation used here.
struct SmallField {
  int q = 0;
  std::function<int(int, int)> add, mul;
};

int field_inv(const SmallField& f, int a) {
  for (int x = 1; x < f.q; ++x)
    if (f.mul(a, x) == 1) return x;
  throw error("field inverse of zero");
}

int field_neg(const SmallField& f, int a) {
  for (int x = 0; x < f.q; ++x)
    if (f.add(a, x) == 0) return x;
  throw error("field negation failed");
}

int field_pow(const SmallField& f, int a, int e) {
  int s = 1;
  for (int i = 0; i < e; ++i) s = f.mul(s, a);
  return s;
}

SmallField prime_field(int p) {
  return {p, [p](int a, int b) { return (a + b) % p; },
          [p](int a, int b) { return (a * b) % p; }};
}

// GF(8) = F2[u]/(u^3+u+1), bit i holding the coefficient of u^i.
SmallField gf8() {
  auto mul = [](int a, int b) {
    int s = 0;
    for (int i = 0; i < 3; ++i)
      if (b >> i & 1) s ^= a << i;
    if (s & 16) s ^= 16 | 6;  // u^4 = u^2 + u
    if (s & 8) s ^= 8 | 3;    // u^3 = u + 1
    return s;
  };
  return {8, [](int a, int b) { return a ^ b; }, mul};
}

// GF(9) = F3[t]/(t^2-t-1), element x + 3y standing for x + y*t.
SmallField gf9() {
  auto add = [](int a, int b) {
    return (a % 3 + b % 3) % 3 + 3 * ((a / 3 + b / 3) % 3);
  };
  auto mul = [](int a, int b) {
    int x1 = a % 3, y1 = a / 3, x2 = b % 3, y2 = b / 3;
    return (x1 * x2 + y1 * y2) % 3 + 3 * ((x1 * y2 + x2 * y1 + y1 * y2) % 3);
  };
  return {9, add, mul};
}

// ---- permutations from point maps ----------------------------------------

Permutation perm_from(int degree, const std::function<int(int)>& f) {
  std::vector<int> img(degree);
  for (int i = 0; i < degree; ++i) img[i] = f(i);
  return Permutation(img);
}

// Affine line: points are the field elements.
Permutation af_shift(const SmallField& f) {
  return perm_from(f.q, [&](int x) { return f.add(x, 1); });
}
Permutation af_scale(const SmallField& f, int g) {
  return perm_from(f.q, [&](int x) { return f.mul(g, x); });
}
Permutation af_power(const SmallField& f, int e) {
  return perm_from(f.q, [&](int x) { return field_pow(f, x, e); });
}

// Projective line P1(F_q): points 0..q-1 are field elements, q is infinity.
Permutation pl_shift(const SmallField& f) {
  return perm_from(f.q + 1, [&](int x) { return x == f.q ? x : f.add(x, 1); });
}
Permutation pl_scale(const SmallField& f, int g) {
  return perm_from(f.q + 1, [&](int x) { return x == f.q ? x : f.mul(g, x); });
}
Permutation pl_power(const SmallField& f, int e) {
  return perm_from(f.q + 1,
                   [&](int x) { return x == f.q ? x : field_pow(f, x, e); });
}
// x -> c/x, swapping 0 and infinity.
Permutation pl_inversion(const SmallField& f, int c) {
  return perm_from(f.q + 1, [&](int x) {
    if (x == 0) return f.q;
    if (x == f.q) return 0;
    return f.mul(c, field_inv(f, x));
  });
}
// x -> t * x^3 on P1(F9): the extension of PSL(2,9) that is neither PGL nor
// PSigmaL (its square is x -> t^4 x = -x, which lies in PSL).
Permutation pl_twisted_gf9() {
  SmallField f = gf9();
  return perm_from(10, [&](int x) {
    return x == 9 ? x : f.mul(3, field_pow(f, x, 3));
  });
}

// ---- projective planes P2(F_q), q prime -----------------------------------

// Points are scale classes of nonzero vectors, canonicalized so the first
// nonzero coordinate is 1.
std::array<int, 3> plane_normalize(int q, std::array<int, 3> v) {
  int lead = 0;
  for (int i = 0; i < 3 && lead == 0; ++i) lead = v[i];
  if (lead == 0) throw error("projective point from zero vector");
  int inv = 1;
  while ((lead * inv) % q != 1) ++inv;
  for (int& c : v) c = c * inv % q;
  return v;
}

std::vector<std::array<int, 3>> plane_points(int q) {
  std::vector<std::array<int, 3>> pts;
  for (int c = 0; c < q; ++c)
    for (int b = 0; b < q; ++b)
      for (int a = 0; a < q; ++a) {
        std::array<int, 3> v{a, b, c};
        if (v == std::array<int, 3>{0, 0, 0}) continue;
        if (plane_normalize(q, v) == v) pts.push_back(v);
      }
  return pts;
}

Permutation plane_matrix_perm(int q, const std::array<std::array<int, 3>, 3>& m) {
  std::vector<std::array<int, 3>> pts = plane_points(q);
  std::map<std::array<int, 3>, int> index;
  for (std::size_t i = 0; i < pts.size(); ++i) index[pts[i]] = static_cast<int>(i);
  std::vector<int> img;
  for (const auto& v : pts) {
    std::array<int, 3> w{};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) w[i] = (w[i] + m[i][j] * v[j]) % q;
    img.push_back(index.at(plane_normalize(q, w)));
  }
  return Permutation(img);
}

// PSL(3,q) on the q^2+q+1 projective points, generated by the coordinate
// cycle and one elementary transvection (their conjugates reach every root
// subgroup, so the pair generates the full special linear group).
PermutationGroup psl3(int q) {
  Permutation cyc = plane_matrix_perm(q, {{{0, 0, 1}, {1, 0, 0}, {0, 1, 0}}});
  Permutation trans = plane_matrix_perm(q, {{{1, 1, 0}, {0, 1, 0}, {0, 0, 1}}});
  return PermutationGroup(q * q + q + 1, {cyc, trans});
}

// ---- the affine plane over F3 (degree 9) -----------------------------------

// Point x + 3y is the vector (x, y); the encoding matches gf9() so the same
// nine points serve both the field and the plane.
Permutation af9_translate(int dx, int dy) {
  return perm_from(9, [&](int p) {
    return (p % 3 + dx) % 3 + 3 * ((p / 3 + dy) % 3);
  });
}
// (x, y) -> (ax+by, cx+dy)
Permutation af9_linear(int a, int b, int c, int d) {
  return perm_from(9, [&](int p) {
    int x = p % 3, y = p / 3;
    return (a * x + b * y) % 3 + 3 * ((c * x + d * y) % 3);
  });
}

// ---- assorted actions ------------------------------------------------------

// The permutation of the ten 2-subsets of {0..4} induced by g in S5.
Permutation pairs_induced(const Permutation& g) {
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j) pairs.emplace_back(i, j);
  auto index_of = [&](int i, int j) {
    if (i > j) std::swap(i, j);
    for (std::size_t k = 0; k < pairs.size(); ++k)
      if (pairs[k] == std::make_pair(i, j)) return static_cast<int>(k);
    throw error("pair index lookup failed");
  };
  std::vector<int> img;
  for (const auto& [i, j] : pairs) img.push_back(index_of(g(i), g(j)));
  return Permutation(img);
}

// Action of g on the right cosets of h, verified to have the given index.
PermutationGroup coset_action(const PermutationGroup& g,
                              const PermutationGroup& h, int index) {
  std::vector<Permutation> reps{Permutation(g.degree())};
  auto rep_of = [&](const Permutation& t) {
    for (std::size_t j = 0; j < reps.size(); ++j)
      if (h.contains(t * reps[j].inverse())) return static_cast<int>(j);
    return -1;
  };
  for (std::size_t i = 0; i < reps.size(); ++i)
    for (const Permutation& s : g.generators()) {
      Permutation t = reps[i] * s;
      if (rep_of(t) < 0) reps.push_back(std::move(t));
    }
  if (static_cast<int>(reps.size()) != index)
    throw error("coset action index mismatch");
  std::vector<Permutation> gens;
  for (const Permutation& s : g.generators()) {
    std::vector<int> img(reps.size());
    for (std::size_t i = 0; i < reps.size(); ++i) img[i] = rep_of(reps[i] * s);
    gens.emplace_back(img);
  }
  return PermutationGroup(index, gens);
}

// ---- entry builders --------------------------------------------------------

PermutationGroup make_psl2(int p, int square, int nonsquare_or_0) {
  SmallField f = prime_field(p);
  std::vector<Permutation> gens{pl_shift(f), pl_scale(f, square),
                                pl_inversion(f, field_neg(f, 1))};
  if (nonsquare_or_0 != 0) gens.push_back(pl_scale(f, nonsquare_or_0));
  return PermutationGroup(p + 1, gens);
}

PermutationGroup make_psl29(bool add_scale, bool add_frob, bool add_twist) {
  SmallField f = gf9();
  // 4 = t^2 generates the squares of GF(9)*; 3 = t generates the whole group.
  std::vector<Permutation> gens{pl_shift(f), pl_scale(f, 4),
                                pl_inversion(f, field_neg(f, 1))};
  if (add_scale) gens.push_back(pl_scale(f, 3));
  if (add_frob) gens.push_back(pl_power(f, 3));
  if (add_twist) gens.push_back(pl_twisted_gf9());
  return PermutationGroup(10, gens);
}

PermutationGroup make_psl28(bool add_frob) {
  SmallField f = gf8();
  std::vector<Permutation> gens{pl_shift(f), pl_scale(f, 2),
                                pl_inversion(f, 1)};
  if (add_frob) gens.push_back(pl_power(f, 2));
  return PermutationGroup(9, gens);
}

PermutationGroup make_frobenius(int p, int mult) {
  SmallField f = prime_field(p);
  return PermutationGroup(p, {af_shift(f), af_scale(f, mult)});
}

PermutationGroup make_agl18(int extra) {  // 0: none, 1: +frobenius, 2: +swap
  SmallField f = gf8();
  std::vector<Permutation> gens{af_shift(f), af_scale(f, 2)};
  if (extra >= 1) gens.push_back(af_power(f, 2));
  // swap the 1 and u coordinates: linear over F2 but not semilinear over GF(8)
  if (extra >= 2)
    gens.push_back(perm_from(8, [](int x) {
      return (x & 4) | ((x & 1) << 1) | ((x >> 1) & 1);
    }));
  return PermutationGroup(8, gens);
}

// Subgroups of AGL(2,3) as translations plus explicit matrix generators.
PermutationGroup make_affine9(const std::vector<std::array<int, 4>>& mats) {
  std::vector<Permutation> gens{af9_translate(1, 0), af9_translate(0, 1)};
  for (const auto& m : mats) gens.push_back(af9_linear(m[0], m[1], m[2], m[3]));
  return PermutationGroup(9, gens);
}

constexpr std::array<int, 4> kRot4{0, 2, 1, 0};    // order 4, det 1
constexpr std::array<int, 4> kSwap{0, 1, 1, 0};    // reflection, det -1
constexpr std::array<int, 4> kShear{1, 1, 0, 1};   // order 3, det 1
constexpr std::array<int, 4> kQuatJ{1, 1, 1, 2};   // j with j^2 = -1, det 1
constexpr std::array<int, 4> kDet2{2, 0, 0, 1};    // det 2
constexpr std::array<int, 4> kMulT{0, 1, 1, 1};    // multiplication by t
constexpr std::array<int, 4> kFrob9{1, 1, 0, 2};   // (x+yt)^3 = (x+y) + 2y t

PermutationGroup make_s5_on_pairs() {
  Permutation five(std::vector<int>{1, 2, 3, 4, 0});
  Permutation swap01(std::vector<int>{1, 0, 2, 3, 4});
  return PermutationGroup(10, {pairs_induced(five), pairs_induced(swap01)});
}

// Invariance group of the Paley biplane: the 11 translates of the quadratic
// residues mod 11 form a 2-(11,5,2) design whose full automorphism group has
// order 660.
PermutationGroup make_biplane_group() {
  std::vector<mask_t> blocks;
  for (int i = 0; i < 11; ++i) {
    mask_t b = 0;
    for (int r : {1, 3, 4, 5, 9}) b |= mask_t{1} << ((r + i) % 11);
    blocks.push_back(b);
  }
  return invariance_group(Relation(11, blocks));
}

PermutationGroup make_m11() {
  return PermutationGroup(
      11, {parse_permutation("(1,2,3,4,5,6,7,8,9,10,11)"),
           parse_permutation("(3,7,11,8)(4,10,5,6)", 11)});
}

// M11 on 12 points: the action on the cosets of an index-12 subgroup of
// order 660, found by pairing the 11-cycle with an involution.
PermutationGroup make_m11_at_12() {
  PermutationGroup m11 = load("M11@11");
  const Permutation& a = m11.generators()[0];
  std::optional<PermutationGroup> sub;
  m11.for_each_element(
      [&](const Permutation& p) {
        if (p.is_identity() || !(p * p).is_identity()) return true;
        PermutationGroup cand(11, {a, p});
        if (cand.order() == 660) {
          sub.emplace(std::move(cand));
          return false;
        }
        return true;
      },
      Config{}.element_iteration_cap);
  if (!sub) throw error("no order-660 subgroup found in M11");
  return coset_action(m11, *sub, 12);
}

// M12: invariance group of the 132 hexads, the orbit of the quadratic
// residues plus infinity under PSL(2,11) on the projective line.
PermutationGroup make_m12() {
  PermutationGroup l2 = load("PSL(2,11)@12");
  mask_t hexad = 0;
  for (int r : {1, 3, 4, 5, 9, 11}) hexad |= mask_t{1} << r;
  Relation hexads = orbit_relation(l2, hexad);
  if (hexads.size() != 132) throw error("hexad orbit size mismatch");
  return invariance_group(hexads, l2);
}

// ---- the table -------------------------------------------------------------

struct EntrySpec {
  const char* name;
  int degree;
  std::uint64_t order;
  bool primitive;
  bool solvable;
  PermutationGroup (*make)();
};

const std::vector<EntrySpec>& specs() {
  static const std::vector<EntrySpec> table = {
      {"V4@4", 4, 4, false, true,
       +[] {
         return PermutationGroup(4, {parse_permutation("(1,2)(3,4)"),
                                     parse_permutation("(1,3)(2,4)")});
       }},
      {"D8@4", 4, 8, false, true, +[] { return PermutationGroup::dihedral(4); }},
      {"C5@5", 5, 5, true, true, +[] { return PermutationGroup::cyclic(5); }},
      {"D10@5", 5, 10, true, true,
       +[] { return PermutationGroup::dihedral(5); }},
      {"F20@5", 5, 20, true, true, +[] { return make_frobenius(5, 2); }},
      {"PSL(2,5)@6", 6, 60, true, false, +[] { return make_psl2(5, 4, 0); }},
      {"PGL(2,5)@6", 6, 120, true, false, +[] { return make_psl2(5, 4, 2); }},
      {"F21@7", 7, 21, true, true, +[] { return make_frobenius(7, 2); }},
      {"F42@7", 7, 42, true, true, +[] { return make_frobenius(7, 3); }},
      {"PSL(3,2)@7", 7, 168, true, false, +[] { return psl3(2); }},
      {"AGL(1,8)@8", 8, 56, true, true, +[] { return make_agl18(0); }},
      {"AGammaL(1,8)@8", 8, 168, true, true, +[] { return make_agl18(1); }},
      {"AGL(3,2)@8", 8, 1344, true, false, +[] { return make_agl18(2); }},
      {"PSL(2,7)@8", 8, 168, true, false, +[] { return make_psl2(7, 2, 0); }},
      {"PGL(2,7)@8", 8, 336, true, false, +[] { return make_psl2(7, 2, 3); }},
      {"AGL(1,9)@9", 9, 72, true, true, +[] { return make_affine9({kMulT}); }},
      {"AGammaL(1,9)@9", 9, 144, true, true,
       +[] { return make_affine9({kMulT, kFrob9}); }},
      {"3^2:D8@9", 9, 72, true, true,
       +[] { return make_affine9({kRot4, kSwap}); }},
      {"3^2:Q8@9", 9, 72, true, true,
       +[] { return make_affine9({kRot4, kQuatJ}); }},
      {"ASL(2,3)@9", 9, 216, true, true,
       +[] { return make_affine9({kShear, kRot4}); }},
      {"AGL(2,3)@9", 9, 432, true, true,
       +[] { return make_affine9({kShear, kRot4, kDet2}); }},
      {"PSL(2,8)@9", 9, 504, true, false, +[] { return make_psl28(false); }},
      {"PGammaL(2,8)@9", 9, 1512, true, false,
       +[] { return make_psl28(true); }},
      {"S5@10", 10, 120, true, false, +[] { return make_s5_on_pairs(); }},
      {"PSL(2,9)@10", 10, 360, true, false,
       +[] { return make_psl29(false, false, false); }},
      {"PGL(2,9)@10", 10, 720, true, false,
       +[] { return make_psl29(true, false, false); }},
      {"PSigmaL(2,9)@10", 10, 720, true, false,
       +[] { return make_psl29(false, true, false); }},
      {"M10@10", 10, 720, true, false,
       +[] { return make_psl29(false, false, true); }},
      {"PGammaL(2,9)@10", 10, 1440, true, false,
       +[] { return make_psl29(true, true, false); }},
      {"F55@11", 11, 55, true, true, +[] { return make_frobenius(11, 4); }},
      {"AGL(1,11)@11", 11, 110, true, true,
       +[] { return make_frobenius(11, 2); }},
      {"PSL(2,11)@11", 11, 660, true, false,
       +[] { return make_biplane_group(); }},
      {"M11@11", 11, 7920, true, false, +[] { return make_m11(); }},
      {"PSL(2,11)@12", 12, 660, true, false,
       +[] { return make_psl2(11, 3, 0); }},
      {"PGL(2,11)@12", 12, 1320, true, false,
       +[] { return make_psl2(11, 3, 2); }},
      {"M11@12", 12, 7920, true, false, +[] { return make_m11_at_12(); }},
      {"M12@12", 12, 95040, true, false, +[] { return make_m12(); }},
      {"AGL(1,13)@13", 13, 156, true, true,
       +[] { return make_frobenius(13, 2); }},
      {"PSL(3,3)@13", 13, 5616, true, false, +[] { return psl3(3); }},
  };
  return table;
}

const CatalogEntry& built_entry(const EntrySpec& s) {
  static std::map<std::string, CatalogEntry> cache;
  static std::recursive_mutex mu;
  std::lock_guard<std::recursive_mutex> lock(mu);
  auto it = cache.find(s.name);
  if (it != cache.end()) return it->second;

  PermutationGroup g = s.make();
  auto fail = [&](const std::string& what) {
    throw error("catalog verification failed for " + std::string(s.name) +
                ": " + what);
  };
  if (g.degree() != s.degree) fail("degree " + std::to_string(g.degree()));
  if (g.order() != s.order)
    fail("order " + std::to_string(g.order()) + " != " +
         std::to_string(s.order));
  if (is_primitive(g) != s.primitive) fail("primitivity flag");
  if (is_solvable(g) != s.solvable) fail("solvability flag");
  CatalogEntry entry{s.name, s.degree, s.order, s.primitive, s.solvable,
                     std::move(g)};
  return cache.emplace(s.name, std::move(entry)).first->second;
}

// C<n>, S<n>, A<n>, D<m>: family names with an optional @<degree> suffix.
std::optional<PermutationGroup> family_group(const std::string& name) {
  if (name.empty()) return std::nullopt;
  char kind = name[0];
  if (kind != 'C' && kind != 'S' && kind != 'A' && kind != 'D')
    return std::nullopt;
  std::size_t i = 1;
  long n = 0;
  bool digits = false;
  while (i < name.size() && std::isdigit(static_cast<unsigned char>(name[i]))) {
    n = n * 10 + (name[i] - '0');
    digits = true;
    ++i;
  }
  if (!digits || n <= 0 || n > 64) return std::nullopt;
  std::optional<long> at;
  if (i < name.size()) {
    if (name[i] != '@') return std::nullopt;
    long d = 0;
    bool more = false;
    for (++i; i < name.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(name[i])))
        return std::nullopt;
      d = d * 10 + (name[i] - '0');
      more = true;
    }
    if (!more) return std::nullopt;
    at = d;
  }
  std::optional<PermutationGroup> g;
  switch (kind) {
    case 'C': g = PermutationGroup::cyclic(static_cast<int>(n)); break;
    case 'S': g = PermutationGroup::symmetric(static_cast<int>(n)); break;
    case 'A': g = PermutationGroup::alternating(static_cast<int>(n)); break;
    case 'D':
      if (n % 2 != 0 || n < 6) return std::nullopt;
      g = PermutationGroup::dihedral(static_cast<int>(n / 2));
      break;
  }
  if (at && *at != g->degree())
    throw error("catalog name " + name + ": degree suffix does not match " +
                std::to_string(g->degree()));
  return g;
}

}  // namespace

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> all = [] {
    std::vector<CatalogEntry> v;
    for (const EntrySpec& s : specs()) v.push_back(built_entry(s));
    return v;
  }();
  return all;
}

bool catalog_has(const std::string& name) {
  for (const EntrySpec& s : specs())
    if (name == s.name) return true;
  return false;
}

PermutationGroup load(const std::string& name) {
  for (const EntrySpec& s : specs())
    if (name == s.name) return built_entry(s).group;
  if (std::optional<PermutationGroup> fam = family_group(name)) return *fam;
  throw error("unknown catalog name: " + name);
}

const ExpectedLists& expected_lists() {
  static const ExpectedLists lists = {
      // proper set-transitive groups
      {{5, "F20@5"}, {6, "PGL(2,5)@6"}, {9, "PSL(2,8)@9"},
       {9, "PGammaL(2,8)@9"}},
      // orbit closure strictly larger, set-transitive excluded
      {{5, "C5@5"},
       {8, "AGL(1,8)@8"},
       {8, "AGammaL(1,8)@8"},
       {9, "AGL(1,9)@9"},
       {9, "ASL(2,3)@9"},
       {10, "PGL(2,9)@10"}},
      // no regular set
      {{5, "D10@5"},     {6, "PSL(2,5)@6"},      {7, "F42@7"},
       {7, "PSL(3,2)@7"}, {8, "AGammaL(1,8)@8"},  {8, "AGL(3,2)@8"},
       {8, "PSL(2,7)@8"}, {8, "PGL(2,7)@8"},      {9, "ASL(2,3)@9"},
       {9, "AGL(2,3)@9"}, {9, "3^2:D8@9"},        {9, "AGammaL(1,9)@9"},
       {10, "S5@10"},     {10, "PSL(2,9)@10"},    {10, "PGL(2,9)@10"},
       {10, "PSigmaL(2,9)@10"}, {10, "M10@10"},   {10, "PGammaL(2,9)@10"},
       {11, "PSL(2,11)@11"}, {11, "M11@11"},      {12, "PGL(2,11)@12"},
       {12, "M11@12"},    {12, "M12@12"},         {13, "PSL(3,3)@13"}},
  };
  return lists;
}

}  // namespace relkit
