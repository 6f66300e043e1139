#include "relkit/closure.hpp"

#include <algorithm>
#include <array>
#include <mutex>
#include <string>
#include <unordered_map>

#include "relkit/error.hpp"
#include "relkit/subset_action.hpp"

namespace relkit {

namespace {

void check_layer(const PermutationGroup& g, const PermutationGroup& h,
                 int k) {
  if (g.degree() != h.degree())
    throw precondition_error("degree", "groups act on different point sets");
  if (k < 0 || k > g.degree())
    throw precondition_error("layer", "k outside 0..degree");
}

// Every generator of h must map every k-subset within its g-orbit.
bool preserves_layer_orbits(const OrbitPartition& part,
                            const PermutationGroup& h, int k) {
  if (k == 0) return true;
  int n = part.degree;
  mask_t m = full_mask(k);
  do {
    int id = part.orbit_index_of(m);
    for (const Permutation& p : h.generators())
      if (part.orbit_index_of(p.apply(m)) != id) return false;
    m = next_k_subset(m, n);
  } while (m != 0);
  return true;
}

// Backtrack over images of 0..n-1; a partial image dies as soon as a
// fully-decided k-subset leaves its orbit.  Leaves are collected into
// `found`; first-point images that are not minimal in their orbit under
// the group found so far are skipped, which is sound because skipped
// elements are recovered as products of found ones.
struct ClosureSearch {
  int n, k;
  const OrbitPartition& part;
  std::vector<std::vector<mask_t>> complete_at;  // by highest point
  std::array<int, kMaxDegree> img{};
  mask_t used = 0;
  GroupBuilder found;

  ClosureSearch(const PermutationGroup& g, const OrbitPartition& p, int kk)
      : n(g.degree()), k(kk), part(p), complete_at(n), found(g.degree()) {
    for (mask_t m : k_subsets(n, k))
      complete_at[63 - std::countl_zero(m)].push_back(m);
    for (const Permutation& gen : g.generators()) found.add(gen);
  }

  bool root_minimal(int cand) const {
    std::vector<int> orbit{cand};
    mask_t seen = bit(cand);
    for (std::size_t i = 0; i < orbit.size(); ++i)
      for (const Permutation& p : found.generators()) {
        int y = p(orbit[i]);
        if (y < cand) return false;
        if (!(seen & bit(y))) {
          seen |= bit(y);
          orbit.push_back(y);
        }
      }
    return true;
  }

  void run(int p) {
    if (p == n) {
      std::vector<std::uint8_t> images(n);
      for (int i = 0; i < n; ++i) images[i] = static_cast<std::uint8_t>(img[i]);
      found.add(Permutation(std::move(images)));
      return;
    }
    for (int cand = 0; cand < n; ++cand) {
      if (used & bit(cand)) continue;
      if (p == 0 && !root_minimal(cand)) continue;
      img[p] = cand;
      bool ok = true;
      for (mask_t x : complete_at[p]) {
        mask_t image = 0;
        for (mask_t rest = x; rest;) {
          int q = std::countr_zero(rest);
          rest &= rest - 1;
          image |= bit(img[q]);
        }
        if (part.orbit_index_of(image) != part.orbit_index_of(x)) {
          ok = false;
          break;
        }
      }
      if (ok) {
        used |= bit(cand);
        run(p + 1);
        used &= ~bit(cand);
      }
    }
  }
};

std::string fingerprint(const PermutationGroup& g) {
  std::vector<std::string> rows;
  for (const Permutation& p : g.generators()) {
    std::string row;
    for (int i = 0; i < g.degree(); ++i)
      row += static_cast<char>(p(i));
    rows.push_back(std::move(row));
  }
  std::sort(rows.begin(), rows.end());
  std::string out = std::to_string(g.degree());
  for (const std::string& r : rows) {
    out += '|';
    out += r;
  }
  return out;
}

}  // namespace

bool k_orbit_equivalent(const PermutationGroup& g, const PermutationGroup& h,
                        int k) {
  check_layer(g, h, k);
  OrbitPartition pg = orbits_on_k_subsets(g, k);
  if (!preserves_layer_orbits(pg, h, k)) return false;
  OrbitPartition ph = orbits_on_k_subsets(h, k);
  return preserves_layer_orbits(ph, g, k);
}

PermutationGroup k_closure(const PermutationGroup& g, int k,
                           const Config& cfg) {
  int n = g.degree();
  if (k < 0 || k > n)
    throw precondition_error("layer", "k outside 0..degree");
  k = std::min(k, n - k);
  if (k == 0) return PermutationGroup::symmetric(n);
  OrbitPartition part = orbits_on_k_subsets(g, k);
  if (part.orbit_count() == 1) return PermutationGroup::symmetric(n);
  if (n > cfg.closure_max_degree)
    throw cap_exceeded("closure_degree",
                       "degree " + std::to_string(n) + " exceeds cap " +
                           std::to_string(cfg.closure_max_degree));
  ClosureSearch search(g, part, k);
  search.run(0);
  return PermutationGroup(std::move(search.found));
}

PermutationGroup orbit_closure(const PermutationGroup& g, const Config& cfg) {
  static std::mutex mu;
  static std::unordered_map<std::string, PermutationGroup> cache;
  // the cap is part of the key so a tight config never sees a cached result
  // it could not have computed itself
  std::string key =
      fingerprint(g) + '#' + std::to_string(cfg.closure_max_degree);
  {
    std::scoped_lock lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  PermutationGroup star = k_closure(g, g.degree() / 2, cfg);
  std::scoped_lock lock(mu);
  return cache.emplace(key, std::move(star)).first->second;
}

ClosureReport closure_report(const PermutationGroup& g, const Config& cfg) {
  int n = g.degree();
  std::map<int, std::uint64_t> orders;
  for (int k = 0; k <= n / 2; ++k) orders[k] = k_closure(g, k, cfg).order();
  PermutationGroup star = orbit_closure(g, cfg);
  std::uint64_t go = g.order();
  std::uint64_t so = star.order();
  return ClosureReport{n,  go,     orders, so, so / go, so == go,
                       std::move(star)};
}

bool monotonicity_check(const PermutationGroup& g, const PermutationGroup& h,
                        int k, int l) {
  if (k > l || k + l > g.degree())
    throw precondition_error("layers", "need k <= l and k + l <= degree");
  return !k_orbit_equivalent(g, h, l) || k_orbit_equivalent(g, h, k);
}

}  // namespace relkit
