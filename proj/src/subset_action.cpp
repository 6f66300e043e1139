#include "relkit/subset_action.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <optional>
#include <random>
#include <thread>
#include <unordered_set>

#include "relkit/error.hpp"

namespace relkit {

namespace {

// Group order as long as it stays <= cap; nullopt otherwise (overflow-safe).
std::optional<std::uint64_t> order_at_most(const PermutationGroup& g,
                                           std::uint64_t cap) {
  unsigned __int128 o = 1;
  for (const auto& lv : g.levels()) {
    o *= lv.orbit.size();
    if (o > cap) return std::nullopt;
  }
  return static_cast<std::uint64_t>(o);
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<unsigned>(n - k + i) / i;
  return static_cast<std::uint64_t>(r);
}

}  // namespace

std::vector<mask_t> orbit_of_subset(const PermutationGroup& g, mask_t subset) {
  subset &= full_mask(g.degree());
  std::vector<mask_t> out{subset};
  std::unordered_set<mask_t> seen{subset};
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (const auto& p : g.generators()) {
      mask_t img = p.apply(out[i]);
      if (seen.insert(img).second) out.push_back(img);
    }
  }
  return out;
}

mask_t orbit_representative(const PermutationGroup& g, mask_t subset) {
  mask_t best = subset & full_mask(g.degree());
  for (mask_t m : orbit_of_subset(g, subset)) best = std::min(best, m);
  return best;
}

int OrbitPartition::orbit_index_of(mask_t subset) const {
  if (!flat_index.empty()) {
    if (subset >= flat_index.size()) return -1;
    return flat_index[subset];
  }
  auto it = hash_index.find(subset);
  return it == hash_index.end() ? -1 : static_cast<int>(it->second);
}

namespace {

// Shared scan: k >= 0 walks layer k, k == -1 walks the whole power set.
OrbitPartition build_partition(const PermutationGroup& g, int k) {
  const int n = g.degree();
  OrbitPartition part;
  part.degree = n;
  part.k = k;

  const bool flat = n <= 22;
  if (flat) {
    part.flat_index.assign(std::size_t{1} << n, -1);
  } else if (k < 0) {
    throw cap_exceeded("orbit_table_degree",
                       "power-set orbit table needs degree <= 22, got " +
                           std::to_string(n));
  } else {
    std::uint64_t universe = binomial(n, k);
    if (universe > (std::uint64_t{1} << 24))
      throw cap_exceeded("orbit_table_size",
                         "layer has " + std::to_string(universe) +
                             " subsets (cap 2^24)");
    part.hash_index.reserve(static_cast<std::size_t>(universe) * 2);
  }

  auto index_of = [&](mask_t m) -> int {
    return flat ? part.flat_index[m] : part.orbit_index_of(m);
  };
  auto assign = [&](mask_t m, std::int32_t id) {
    if (flat)
      part.flat_index[m] = id;
    else
      part.hash_index.emplace(m, id);
  };

  std::vector<mask_t> queue;
  auto sweep = [&](mask_t seed) {
    if (index_of(seed) >= 0) return;
    const auto id = static_cast<std::int32_t>(part.representatives.size());
    part.representatives.push_back(seed);
    queue.assign(1, seed);
    assign(seed, id);
    std::uint64_t size = 0;
    for (std::size_t i = 0; i < queue.size(); ++i) {
      ++size;
      for (const auto& p : g.generators()) {
        mask_t img = p.apply(queue[i]);
        if (index_of(img) < 0) {
          assign(img, id);
          queue.push_back(img);
        }
      }
    }
    part.orbit_sizes.push_back(size);
  };

  if (k < 0) {
    const mask_t end = mask_t{1} << n;
    for (mask_t m = 0; m < end; ++m) sweep(m);
  } else if (k == 0) {
    sweep(0);
  } else if (k <= n) {
    for (mask_t m = (mask_t{1} << k) - 1; m; m = next_k_subset(m, n)) sweep(m);
  }
  return part;
}

}  // namespace

OrbitPartition orbits_on_k_subsets(const PermutationGroup& g, int k) {
  if (k < 0 || k > g.degree())
    throw precondition_error("layer_in_range",
                             "subset size " + std::to_string(k) +
                                 " outside 0.." + std::to_string(g.degree()));
  return build_partition(g, k);
}

OrbitPartition orbits_on_power_set(const PermutationGroup& g) {
  return build_partition(g, -1);
}

namespace {

// Depth-first search over the stabilizer chain for elements fixing `x`
// setwise.  `t` is the tail product u_i ... u_0 (deepest factor applied
// first), so after choosing levels 0..i-1 every final element maps the base
// point b_i to t(p) where p is the point chosen at level i; pruning keeps
// only choices with t(p) on the same side of x as b_i.
struct SetStabSearch {
  const std::vector<GroupBuilder::Level>& levels;
  mask_t x;
  int degree;

  // When collecting: skip a root image that is not minimal in its orbit
  // under the already-found subgroup (sound: the skipped coset is reached
  // by composing with a known element).
  GroupBuilder* found = nullptr;
  bool stop_at_nonidentity = false;
  bool hit = false;

  bool root_is_minimal(int p) const {
    std::vector<char> seen(degree, 0);
    std::vector<int> q{p};
    seen[p] = 1;
    for (std::size_t i = 0; i < q.size(); ++i)
      for (const auto& h : found->generators()) {
        int b = h(q[i]);
        if (!seen[b]) {
          if (b < p) return false;
          seen[b] = 1;
          q.push_back(b);
        }
      }
    return true;
  }

  void run(std::size_t li, const Permutation& t) {
    if (hit) return;
    if (li == levels.size()) {
      if (t.apply(x) != x) return;
      if (found) found->add(t);
      if (stop_at_nonidentity && !t.is_identity()) hit = true;
      return;
    }
    const auto& lv = levels[li];
    const bool base_in = (x >> lv.base_point) & 1;
    for (int p : lv.orbit) {
      const int beta = t(p);
      if ((((x >> beta) & 1) != 0) != base_in) continue;
      if (li == 0 && found && !root_is_minimal(p)) continue;
      run(li + 1, compose(lv.rep(p), t));
      if (hit) return;
    }
  }
};

}  // namespace

PermutationGroup setwise_stabilizer(const PermutationGroup& g, mask_t subset,
                                    const Config& cfg) {
  const int n = g.degree();
  subset &= full_mask(n);
  if (order_at_most(g, cfg.element_iteration_cap)) {
    GroupBuilder b(n);
    g.for_each_element([&](const Permutation& p) {
      if (p.apply(subset) == subset) b.add(p);
      return true;
    });
    return PermutationGroup(std::move(b));
  }
  GroupBuilder b(n);
  SetStabSearch search{g.levels(), subset, n, &b, false, false};
  search.run(0, Permutation(n));
  return PermutationGroup(std::move(b));
}

bool has_nontrivial_set_stabilizer(const PermutationGroup& g, mask_t subset) {
  SetStabSearch search{g.levels(), subset & full_mask(g.degree()), g.degree(),
                       nullptr, true, false};
  search.run(0, Permutation(g.degree()));
  return search.hit;
}

std::vector<mask_t> RegularSetCensus::regular_sets(int k,
                                                   std::size_t limit) const {
  std::vector<mask_t> out;
  if (k < 0 || k > degree || limit == 0) return out;
  if (k == 0) {
    if (is_regular(0)) out.push_back(0);
    return out;
  }
  for (mask_t m = (mask_t{1} << k) - 1; m; m = next_k_subset(m, degree)) {
    if (is_regular(m)) {
      out.push_back(m);
      if (out.size() >= limit) break;
    }
  }
  return out;
}

RegularSetCensus regular_set_census(const PermutationGroup& g,
                                    const Config& cfg) {
  const int n = g.degree();
  if (n > cfg.census_max_degree)
    throw cap_exceeded("census_max_degree",
                       "degree " + std::to_string(n) + " > " +
                           std::to_string(cfg.census_max_degree));
  if (!order_at_most(g, cfg.element_iteration_cap))
    throw cap_exceeded("element_iteration_cap",
                       "census needs full element iteration");

  RegularSetCensus census;
  census.degree = n;
  census.group_order = g.order();

  const auto elems = g.elements(cfg.element_iteration_cap);
  std::uint64_t work = 0;
  for (const auto& p : elems) {
    if (p.is_identity()) continue;
    work += mask_t{1} << p.cycle_count();
    if (work > cfg.census_work_cap)
      throw cap_exceeded("census_work_cap",
                         "marking work exceeds " +
                             std::to_string(cfg.census_work_cap));
  }
  census.work = work;

  const std::size_t words = std::size_t{1} << std::max(0, n - 6);
  census.bitmap.assign(words, 0);

  auto mark = [](std::vector<std::uint64_t>& bm, const Permutation& p) {
    const auto cycles = p.cycle_masks();
    bm[0] |= 1;  // empty union
    mask_t u = 0;
    const mask_t count = mask_t{1} << cycles.size();
    for (mask_t i = 1; i < count; ++i) {
      u ^= cycles[std::countr_zero(i)];
      bm[u >> 6] |= mask_t{1} << (u & 63);
    }
  };

  int threads = effective_threads(cfg);
  // Keep the per-thread bitmaps within ~256 MB total.
  while (threads > 1 &&
         static_cast<std::uint64_t>(threads) * words * 8 > (1u << 28))
    --threads;
  if (threads <= 1 || elems.size() < 64) {
    for (const auto& p : elems)
      if (!p.is_identity()) mark(census.bitmap, p);
  } else {
    std::vector<std::vector<std::uint64_t>> local(
        threads - 1, std::vector<std::uint64_t>(words, 0));
    std::atomic<std::size_t> next{0};
    auto worker = [&](std::vector<std::uint64_t>& bm) {
      for (;;) {
        std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
        if (i >= elems.size()) break;
        if (!elems[i].is_identity()) mark(bm, elems[i]);
      }
    };
    std::vector<std::thread> pool;
    pool.reserve(threads - 1);
    for (auto& bm : local) pool.emplace_back(worker, std::ref(bm));
    worker(census.bitmap);
    for (auto& th : pool) th.join();
    for (const auto& bm : local)
      for (std::size_t w = 0; w < words; ++w) census.bitmap[w] |= bm[w];
  }

  census.regular_count_by_size.assign(n + 1, 0);
  for (std::size_t w = 0; w < words; ++w) {
    std::uint64_t clear = ~census.bitmap[w];
    if (n < 6) clear &= (mask_t{1} << (std::size_t{1} << n)) - 1;
    while (clear) {
      const int b = std::countr_zero(clear);
      clear &= clear - 1;
      const mask_t m = (static_cast<mask_t>(w) << 6) | static_cast<mask_t>(b);
      ++census.regular_count_by_size[popcount(m)];
    }
  }
  for (int k = 0; k <= n; ++k) {
    census.total_regular += census.regular_count_by_size[k];
    if (census.regular_count_by_size[k] > 0)
      census.sizes_with_regular.push_back(k);
  }
  return census;
}

std::optional<mask_t> has_regular_set_sampled(const PermutationGroup& g,
                                              int trials,
                                              std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const int n = g.degree();
  const mask_t fm = full_mask(n);
  for (int t = 0; t < trials; ++t) {
    const mask_t m = rng() & fm;
    if (m == 0 || m == fm) continue;
    if (!has_nontrivial_set_stabilizer(g, m)) return m;
  }
  return std::nullopt;
}

bool is_set_transitive(const PermutationGroup& g, const Config& cfg) {
  const int n = g.degree();
  if (n <= 1) return true;
  if (sym_alt_kind(g) != SymAltKind::Neither) return true;
  // Burnside: the number of orbits on the power set is
  // (1/|G|) sum_g 2^{c(g)}; it equals n+1 exactly when every layer is a
  // single orbit.
  unsigned __int128 total = 0;
  std::uint64_t count = 0;
  g.for_each_element(
      [&](const Permutation& p) {
        total += static_cast<unsigned __int128>(1) << p.cycle_count();
        ++count;
        return true;
      },
      cfg.element_iteration_cap);
  return total == static_cast<unsigned __int128>(n + 1) * count;
}

bool has_regular_sets_of_two_sizes(const RegularSetCensus& census) {
  return census.sizes_with_regular.size() >= 2;
}

}  // namespace relkit
