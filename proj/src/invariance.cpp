#include "relkit/invariance.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "relkit/closure.hpp"
#include "relkit/error.hpp"
#include "relkit/subset_action.hpp"

namespace relkit {

namespace {

std::uint64_t binomial64(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 acc = 1;
  for (int i = 1; i <= k; ++i) {
    acc = acc * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
    if (acc > UINT64_MAX) throw error("binomial overflow");
  }
  return static_cast<std::uint64_t>(acc);
}

// Backtrack over point images.  Candidate images are restricted to points
// with the same per-size member-incidence signature; partially decided
// members must stay extendable to some member of their layer, and completed
// members must land in the layer exactly.  Leaves are elements of G(R) and
// are accumulated into a chain; at the root only the least point of each
// orbit of the group found so far is tried (any other image is a found
// element times a smaller-rooted one).
struct InvarianceSearch {
  int n;
  std::vector<mask_t> members;
  std::vector<int> msize;
  std::vector<const std::vector<mask_t>*> layer_of;  // per member
  std::vector<std::vector<int>> at_point;            // point -> member ids
  std::vector<int> order_pts;                        // depth -> point
  std::vector<std::vector<int>> cand;                // point -> allowed images

  std::array<int, kMaxDegree> img{};
  mask_t used = 0;
  std::vector<mask_t> pimg;     // per member: image bits decided so far
  std::vector<int> dcount;      // per member: how many points decided
  std::vector<mask_t> witness;  // per member: cached extendability witness
  GroupBuilder found;
  std::uint64_t nodes = 0;
  std::uint64_t node_cap = 0;

  InvarianceSearch(int degree, const std::map<int, std::vector<mask_t>>& layers)
      : n(degree), found(degree) {
    for (const auto& [k, masks] : layers) {
      for (mask_t m : masks) {
        members.push_back(m);
        msize.push_back(k);
      }
    }
    layer_of.resize(members.size());
    for (std::size_t j = 0; j < members.size(); ++j)
      layer_of[j] = &layers.at(msize[j]);
    at_point.resize(n);
    for (std::size_t j = 0; j < members.size(); ++j)
      for (int x : mask_points(members[j]))
        at_point[x].push_back(static_cast<int>(j));

    // Image classes: per-size incidence counts must match.
    std::vector<std::vector<int>> sig(n);
    for (int x = 0; x < n; ++x) {
      for (const auto& [k, masks] : layers) {
        int cnt = 0;
        for (mask_t m : masks) cnt += static_cast<int>(m >> x & 1);
        sig[x].push_back(cnt);
      }
    }
    cand.resize(n);
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        if (sig[y] == sig[x]) cand[x].push_back(y);

    // Static order: most-connected-to-decided first, then smaller class.
    mask_t picked = 0;
    for (int step = 0; step < n; ++step) {
      int best = -1;
      std::size_t best_score = 0, best_class = 0;
      for (int x = 0; x < n; ++x) {
        if (picked >> x & 1) continue;
        std::size_t score = 0;
        for (int j : at_point[x])
          if (members[j] & picked) ++score;
        if (best < 0 || score > best_score ||
            (score == best_score && cand[x].size() < best_class)) {
          best = x;
          best_score = score;
          best_class = cand[x].size();
        }
      }
      order_pts.push_back(best);
      picked |= bit(best);
    }

    pimg.assign(members.size(), 0);
    dcount.assign(members.size(), 0);
    witness = members;
  }

  bool root_minimal(int p) const {
    mask_t seen = bit(p);
    std::vector<int> stack{p};
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (const auto& g : found.generators()) {
        int y = g(x);
        if (y < p) return false;
        if (!(seen >> y & 1)) {
          seen |= bit(y);
          stack.push_back(y);
        }
      }
    }
    return true;
  }

  bool assign(int x, int y, std::vector<int>& touched) {
    for (int j : at_point[x]) {
      mask_t np = pimg[j] | bit(y);
      pimg[j] = np;
      ++dcount[j];
      touched.push_back(j);
      if (dcount[j] == msize[j]) {
        const auto& lay = *layer_of[j];
        if (!std::binary_search(lay.begin(), lay.end(), np)) return false;
      } else if (np & ~witness[j]) {
        bool ok = false;
        for (mask_t m : *layer_of[j])
          if (!(np & ~m)) {
            witness[j] = m;
            ok = true;
            break;
          }
        if (!ok) return false;
      }
    }
    return true;
  }

  void unassign(const std::vector<int>& touched, int y) {
    for (int j : touched) {
      pimg[j] &= ~bit(y);
      --dcount[j];
    }
  }

  void run(int depth) {
    if (++nodes > node_cap)
      throw cap_exceeded("invariance_nodes",
                         "invariance backtrack exceeded its node budget");
    if (depth == n) {
      std::vector<std::uint8_t> im(n);
      for (int i = 0; i < n; ++i) im[i] = static_cast<std::uint8_t>(img[i]);
      found.add(Permutation(std::move(im)));
      return;
    }
    int x = order_pts[depth];
    for (int y : cand[x]) {
      if (used >> y & 1) continue;
      if (depth == 0 && !root_minimal(y)) continue;
      std::vector<int> touched;
      touched.reserve(at_point[x].size());
      if (assign(x, y, touched)) {
        img[x] = y;
        used |= bit(y);
        run(depth + 1);
        used &= ~bit(y);
      }
      unassign(touched, y);
    }
  }
};

PermutationGroup invariance_group_impl(const Relation& r,
                                       const PermutationGroup* seed,
                                       const Config& cfg) {
  int n = r.degree();
  if (seed) {
    if (seed->degree() != n)
      throw precondition_error("degree", "seed degree differs from relation");
    if (!r.is_invariant_under(*seed))
      throw precondition_error("seed", "seed does not preserve the relation");
  }

  // Complete layers (and the sizes 0, n) are invariant under all of Sym(n).
  std::map<int, std::vector<mask_t>> layers;
  for (mask_t m : r.members()) layers[popcount(m)].push_back(m);
  for (auto it = layers.begin(); it != layers.end();) {
    int k = it->first;
    if (k == 0 || k == n || it->second.size() == binomial64(n, k))
      it = layers.erase(it);
    else
      ++it;
  }
  if (layers.empty()) return PermutationGroup::symmetric(n);
  if (!seed && n > cfg.exhaustive_invariance_max_degree)
    throw cap_exceeded("invariance_degree",
                       "unseeded invariance search capped at degree " +
                           std::to_string(cfg.exhaustive_invariance_max_degree));

  InvarianceSearch search(n, layers);
  search.node_cap = cfg.element_iteration_cap * 8;
  if (seed)
    for (const auto& g : seed->generators()) search.found.add(g);
  search.run(0);
  return PermutationGroup(std::move(search.found));
}

// ---- exact minimization over the orbit closure ---------------------------

struct SlotChoice {
  std::vector<std::uint64_t> pres;  // cosets preserving the union
  std::uint32_t sets;               // which orbits the union takes
};

struct Slot {
  int k = 0;
  bool complemented = false;
  int part_index = 0;
  int choice_index = 0;
};

struct ExactOutcome {
  std::uint64_t r_star = 0;
  Relation witness;
};

std::uint64_t bits_popcount(const std::vector<std::uint64_t>& b) {
  std::uint64_t c = 0;
  for (auto w : b) c += std::popcount(w);
  return c;
}

std::string bits_key(const std::vector<std::uint64_t>& b) {
  return std::string(reinterpret_cast<const char*>(b.data()),
                     b.size() * sizeof(std::uint64_t));
}

// Minimizes |G(R)| over relations preserved by `star`, measured in cosets of
// star: every such G(R) is the set of cosets preserving each chosen union of
// layer orbits, so intersecting per-layer preservation masks and taking the
// least popcount reachable gives r(star) exactly.
std::optional<ExactOutcome> exact_min_over_star(const PermutationGroup& star,
                                                const Config& cfg) {
  int n = star.degree();
  if (n > 20) return std::nullopt;  // n! no longer fits
  std::uint64_t so = star.order();
  std::uint64_t ncos = factorial(n) / so;
  if (ncos > cfg.coset_cap) return std::nullopt;

  // Enumerate right cosets; adjacent transpositions connect them all.
  PermutationGroup full = star.rebased_full();
  std::vector<Permutation> taus;
  for (int i = 0; i + 1 < n; ++i) {
    std::vector<int> im(n);
    for (int x = 0; x < n; ++x) im[x] = x;
    std::swap(im[i], im[i + 1]);
    taus.emplace_back(im);
  }
  std::vector<Permutation> reps;
  std::unordered_map<std::string, int> coset_id;
  auto intern = [&](const Permutation& p) {
    Permutation canon = full.min_coset_rep(p);
    std::string key(canon.images().begin(), canon.images().end());
    auto [it, fresh] = coset_id.emplace(std::move(key), reps.size());
    if (fresh) reps.push_back(std::move(canon));
    return fresh;
  };
  intern(Permutation(n));
  for (std::size_t head = 0; head < reps.size(); ++head)
    for (const auto& tau : taus) intern(compose(reps[head], tau));
  if (reps.size() != ncos) throw error("coset enumeration mismatch");

  const int words = static_cast<int>((ncos + 63) / 64);
  std::vector<OrbitPartition> parts;
  std::vector<std::vector<SlotChoice>> choice_sets;
  std::vector<Slot> slots;

  for (int k = 1; k <= n / 2; ++k) {
    OrbitPartition part = orbits_on_k_subsets(star, k);
    int t = part.orbit_count();
    if (t <= 1) continue;
    if ((std::uint64_t{1} << t) > cfg.per_layer_union_cap) return std::nullopt;

    // Which orbits each coset sends each orbit into.
    std::vector<std::vector<std::uint32_t>> row(
        ncos, std::vector<std::uint32_t>(t, 0));
    mask_t m = full_mask(k);
    mask_t last = m << (n - k);
    for (;;) {
      int i0 = part.orbit_index_of(m);
      for (std::size_t c = 0; c < ncos; ++c)
        row[c][i0] |= 1u << part.orbit_index_of(reps[c].apply(m));
      if (m == last) break;
      m = next_k_subset(m, n);
    }
    std::unordered_map<std::string, int> row_id;
    std::vector<std::vector<std::uint32_t>> crow;
    std::vector<std::vector<std::uint64_t>> cbits;
    for (std::size_t c = 0; c < ncos; ++c) {
      std::string key(reinterpret_cast<const char*>(row[c].data()),
                      row[c].size() * sizeof(std::uint32_t));
      auto [it, fresh] = row_id.emplace(std::move(key), crow.size());
      if (fresh) {
        crow.push_back(row[c]);
        cbits.emplace_back(words, 0);
      }
      cbits[it->second][c >> 6] |= std::uint64_t{1} << (c & 63);
    }

    std::vector<SlotChoice> choices;
    std::unordered_map<std::string, int> pres_seen;
    for (std::uint32_t sets = 0; sets < (std::uint32_t{1} << t); ++sets) {
      std::vector<std::uint64_t> pres(words, 0);
      for (std::size_t cls = 0; cls < crow.size(); ++cls) {
        bool keeps = true;
        for (int i = 0; i < t && keeps; ++i)
          if ((sets >> i & 1) && (crow[cls][i] & ~sets)) keeps = false;
        if (keeps)
          for (int w = 0; w < words; ++w) pres[w] |= cbits[cls][w];
      }
      if (pres_seen.emplace(bits_key(pres), choices.size()).second)
        choices.push_back({std::move(pres), sets});
    }

    int pi = static_cast<int>(parts.size());
    int ci = static_cast<int>(choice_sets.size());
    parts.push_back(std::move(part));
    choice_sets.push_back(std::move(choices));
    slots.push_back({k, false, pi, ci});
    if (k < n - k) slots.push_back({k, true, pi, ci});
  }

  // Reachability sweep over intersections, one slot at a time.
  struct Node {
    int parent;
    int slot;
    std::uint32_t sets;
  };
  std::vector<Node> pool{{-1, -1, 0}};
  std::vector<std::vector<std::uint64_t>> frontier_bits;
  std::vector<int> frontier_node{0};
  {
    std::vector<std::uint64_t> all(words, ~std::uint64_t{0});
    if (ncos & 63) all[words - 1] = (std::uint64_t{1} << (ncos & 63)) - 1;
    frontier_bits.push_back(std::move(all));
  }
  std::size_t state_cap =
      std::max<std::size_t>(1024, (std::size_t{1} << 25) / words);

  for (std::size_t si = 0; si < slots.size(); ++si) {
    const auto& choices = choice_sets[slots[si].choice_index];
    std::unordered_map<std::string, int> seen;
    std::vector<std::vector<std::uint64_t>> nbits;
    std::vector<int> nnode;
    for (std::size_t fi = 0; fi < frontier_bits.size(); ++fi) {
      for (const auto& ch : choices) {
        std::vector<std::uint64_t> nb(words);
        for (int w = 0; w < words; ++w)
          nb[w] = frontier_bits[fi][w] & ch.pres[w];
        if (!seen.emplace(bits_key(nb), nnode.size()).second) continue;
        pool.push_back({frontier_node[fi], static_cast<int>(si), ch.sets});
        nnode.push_back(static_cast<int>(pool.size()) - 1);
        nbits.push_back(std::move(nb));
        if (nnode.size() > state_cap) return std::nullopt;
      }
    }
    frontier_bits = std::move(nbits);
    frontier_node = std::move(nnode);
  }

  std::size_t best = 0;
  std::uint64_t best_pop = bits_popcount(frontier_bits[0]);
  for (std::size_t fi = 1; fi < frontier_bits.size(); ++fi) {
    std::uint64_t p = bits_popcount(frontier_bits[fi]);
    if (p < best_pop) {
      best_pop = p;
      best = fi;
    }
  }

  std::vector<mask_t> witness;
  for (int node = frontier_node[best]; pool[node].parent >= 0;
       node = pool[node].parent) {
    if (pool[node].sets == 0) continue;
    const Slot& slot = slots[pool[node].slot];
    const OrbitPartition& part = parts[slot.part_index];
    mask_t m = full_mask(slot.k);
    mask_t last = m << (n - slot.k);
    for (;;) {
      if (pool[node].sets >> part.orbit_index_of(m) & 1)
        witness.push_back(slot.complemented ? full_mask(n) & ~m : m);
      if (m == last) break;
      m = next_k_subset(m, n);
    }
  }
  return ExactOutcome{best_pop, Relation(n, std::move(witness))};
}

// ---- greedy fallback ------------------------------------------------------

struct GreedyOutcome {
  std::uint64_t best_order = 0;
  Relation best;
};

// Drop/add local search over unions of G-orbits, one toggle per orbit,
// evaluated with the seeded invariance search.  Only an upper bound.
std::optional<GreedyOutcome> greedy_min_over(const PermutationGroup& g,
                                             const Config& cfg) {
  constexpr std::uint64_t kLayerScanCap = 1'000'000;
  constexpr std::size_t kToggleCap = 64;
  int n = g.degree();

  struct Entry {
    int k;
    std::vector<std::vector<mask_t>> orbit_members;
    std::vector<char> included;
  };
  std::vector<Entry> entries;
  std::size_t toggles = 0;
  for (int k = 1; k < n && toggles < kToggleCap; ++k) {
    if (binomial64(n, k) > kLayerScanCap) continue;
    OrbitPartition part = orbits_on_k_subsets(g, k);
    int t = part.orbit_count();
    if (t < 2) continue;
    t = static_cast<int>(std::min<std::size_t>(t, kToggleCap - toggles));
    Entry e;
    e.k = k;
    e.orbit_members.resize(t);
    mask_t m = full_mask(k);
    mask_t last = m << (n - k);
    for (;;) {
      int i = part.orbit_index_of(m);
      if (i < t) e.orbit_members[i].push_back(m);
      if (m == last) break;
      m = next_k_subset(m, n);
    }
    e.included.assign(t, 1);
    e.included[t - 1] = 0;  // all orbits of a layer together say nothing
    toggles += t;
    entries.push_back(std::move(e));
  }

  std::uint64_t sym_order = n <= 20 ? factorial(n) : UINT64_MAX;
  auto eval = [&](const Relation& r) -> std::optional<std::uint64_t> {
    if (r.empty()) return sym_order == UINT64_MAX
                              ? std::optional<std::uint64_t>{}
                              : std::optional<std::uint64_t>{sym_order};
    try {
      return invariance_group(r, g, cfg).order();
    } catch (const cap_exceeded&) {
      return std::nullopt;
    }
  };
  auto build = [&]() {
    std::vector<mask_t> ms;
    for (const auto& e : entries)
      for (std::size_t i = 0; i < e.orbit_members.size(); ++i)
        if (e.included[i])
          ms.insert(ms.end(), e.orbit_members[i].begin(),
                    e.orbit_members[i].end());
    return Relation(n, std::move(ms));
  };

  Relation current = build();
  auto current_order = eval(current);
  if (!current_order) return std::nullopt;
  GreedyOutcome out{*current_order, current};

  for (int pass = 0; pass < 3; ++pass) {
    bool improved = false;
    for (auto& e : entries) {
      for (std::size_t i = 0; i < e.orbit_members.size(); ++i) {
        e.included[i] ^= 1;
        Relation r = build();
        auto v = eval(r);
        if (v && *v < out.best_order) {
          out = {*v, std::move(r)};
          improved = true;
        } else {
          e.included[i] ^= 1;
        }
      }
    }
    if (!improved) break;
  }
  return out;
}

}  // namespace

PermutationGroup invariance_group(const Relation& r, const Config& cfg) {
  return invariance_group_impl(r, nullptr, cfg);
}

PermutationGroup invariance_group(const Relation& r,
                                  const PermutationGroup& seed,
                                  const Config& cfg) {
  return invariance_group_impl(r, &seed, cfg);
}

RelationGroupReport relation_closure(const PermutationGroup& g,
                                     const Config& cfg) {
  RelationGroupReport rep;
  rep.group_order = g.order();

  std::optional<PermutationGroup> star;
  try {
    star = orbit_closure(g, cfg);
  } catch (const cap_exceeded&) {
    // degree beyond the closure sweep; fall through to the bound search
  }
  if (star) {
    rep.c = star->order() / rep.group_order;
    if (auto ex = exact_min_over_star(*star, cfg)) {
      rep.r_of_g = rep.c * ex->r_star;
      rep.closure_order = ex->r_star * star->order();
      rep.exact = true;
      rep.is_relation_group = rep.r_of_g == 1;
      rep.witness_relation = std::move(ex->witness);
      return rep;
    }
  }

  if (auto gr = greedy_min_over(g, cfg)) {
    rep.r_of_g = gr->best_order / rep.group_order;
    rep.closure_order = gr->best_order;
    rep.exact = rep.r_of_g == 1 || (star && rep.r_of_g == rep.c);
    rep.is_relation_group = rep.exact && rep.r_of_g == 1;
    rep.witness_relation = std::move(gr->best);
  }
  return rep;
}

bool is_relation_group(const PermutationGroup& g, const Config& cfg) {
  return relation_closure(g, cfg).is_relation_group;
}

Relation basic_lemma_construct(const PermutationGroup& h, const Relation& r,
                               mask_t w, const PermutationGroup& g,
                               const Config& cfg) {
  int n = h.degree();
  if (r.degree() != n || g.degree() != n)
    throw precondition_error("degree", "degrees of h, g and r must agree");
  if (w & ~full_mask(n))
    throw precondition_error("set_range", "w has points outside the domain");
  if (!g.is_subgroup_of(h))
    throw precondition_error("not_subgroup", "g is not a subgroup of h");
  if (!r.is_invariant_under(h))
    throw precondition_error("not_invariance_group",
                             "h does not preserve the relation");
  if (invariance_group(r, h, cfg).order() != h.order())
    throw precondition_error("not_invariance_group",
                             "the relation has a larger invariance group");
  if (has_nontrivial_set_stabilizer(h, w))
    throw precondition_error("not_regular", "w is not a regular set for h");
  auto ar = r.arities();
  if (std::find(ar.begin(), ar.end(), popcount(w)) != ar.end())
    throw precondition_error("arity_clash",
                             "|w| collides with an arity of the relation");
  return r.union_with(orbit_relation(g, w));
}

}  // namespace relkit
