#include "relkit/blocks.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include "relkit/error.hpp"

namespace relkit {

int BlockSystem::degree() const {
  int n = 0;
  for (const auto& b : blocks) n += static_cast<int>(b.size());
  return n;
}

int BlockSystem::block_size() const {
  return blocks.empty() ? 0 : static_cast<int>(blocks.front().size());
}

int BlockSystem::block_of(int point) const {
  for (int i = 0; i < block_count(); ++i)
    if (std::binary_search(blocks[i].begin(), blocks[i].end(), point)) return i;
  throw precondition_error("point_in_system", "point not covered by block system");
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  // Returns false if already together.
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[b] = a;
    return true;
  }
};

}  // namespace

BlockSystem block_system_from_seed(const PermutationGroup& g, int a, int b) {
  int n = g.degree();
  if (a < 0 || a >= n || b < 0 || b >= n)
    throw precondition_error("seed_in_range", "seed point out of range");
  UnionFind uf(n);
  std::deque<std::pair<int, int>> work;
  auto merge = [&](int x, int y) {
    int rx = uf.find(x), ry = uf.find(y);
    if (rx != ry) {
      uf.unite(rx, ry);
      work.emplace_back(rx, ry);
    }
  };
  merge(a, b);
  while (!work.empty()) {
    auto [x, y] = work.front();
    work.pop_front();
    for (const Permutation& p : g.generators()) merge(p(x), p(y));
  }
  std::vector<std::vector<int>> classes(n);
  for (int i = 0; i < n; ++i) classes[uf.find(i)].push_back(i);
  BlockSystem out;
  for (auto& c : classes)
    if (!c.empty()) out.blocks.push_back(std::move(c));
  std::sort(out.blocks.begin(), out.blocks.end(),
            [](const auto& x, const auto& y) { return x.front() < y.front(); });
  return out;
}

std::vector<BlockSystem> minimal_block_systems(const PermutationGroup& g) {
  int n = g.degree();
  if (n < 2) return {};
  if (!g.is_transitive())
    throw precondition_error("transitive", "block systems require a transitive group");
  // Candidate blocks through point 0; keep the inclusion-minimal ones.
  std::vector<std::pair<std::vector<int>, BlockSystem>> candidates;
  for (int i = 1; i < n; ++i) {
    BlockSystem sys = block_system_from_seed(g, 0, i);
    if (sys.block_count() <= 1) continue;  // trivial congruence
    std::vector<int> blk = sys.blocks[sys.block_of(0)];
    bool dup = false;
    for (const auto& c : candidates)
      if (c.first == blk) dup = true;
    if (!dup) candidates.emplace_back(std::move(blk), std::move(sys));
  }
  std::vector<BlockSystem> out;
  for (const auto& [blk, sys] : candidates) {
    bool minimal = true;
    for (const auto& [other, osys] : candidates) {
      if (other.size() >= blk.size() || other == blk) continue;
      if (std::includes(blk.begin(), blk.end(), other.begin(), other.end())) {
        minimal = false;
        break;
      }
    }
    if (minimal) out.push_back(sys);
  }
  return out;
}

bool is_primitive(const PermutationGroup& g) {
  if (g.degree() < 2)
    throw precondition_error("degree_at_least_2", "primitivity undefined for degree < 2");
  if (!g.is_transitive()) return false;
  return minimal_block_systems(g).empty();
}

PermutationGroup block_action(const PermutationGroup& g,
                              const BlockSystem& sys) {
  if (sys.degree() != g.degree())
    throw precondition_error("system_matches_degree", "block system degree mismatch");
  int s = sys.block_count();
  std::vector<int> owner(g.degree());
  for (int i = 0; i < s; ++i)
    for (int p : sys.blocks[i]) owner[p] = i;
  std::vector<Permutation> gens;
  for (const Permutation& p : g.generators()) {
    std::vector<int> img(s);
    for (int i = 0; i < s; ++i) img[i] = owner[p(sys.blocks[i].front())];
    gens.emplace_back(img);
  }
  return PermutationGroup(s, gens);
}

PermutationGroup induced_block_group(const PermutationGroup& g,
                                     const BlockSystem& sys, int block_index) {
  const std::vector<int>& block = sys.blocks[block_index];
  int d = static_cast<int>(block.size());
  std::vector<int> local(g.degree(), -1);
  for (int i = 0; i < d; ++i) local[block[i]] = i;

  // Orbit of the block with a block transversal, then Schreier generators of
  // the block stabilizer restricted to the block.
  int s = sys.block_count();
  std::vector<int> owner(g.degree());
  for (int i = 0; i < s; ++i)
    for (int p : sys.blocks[i]) owner[p] = i;

  std::vector<Permutation> transversal(s);
  std::vector<bool> seen(s, false);
  std::deque<int> queue;
  transversal[block_index] = Permutation(g.degree());
  seen[block_index] = true;
  queue.push_back(block_index);
  while (!queue.empty()) {
    int bidx = queue.front();
    queue.pop_front();
    for (const Permutation& p : g.generators()) {
      int to = owner[p(sys.blocks[bidx].front())];
      if (!seen[to]) {
        seen[to] = true;
        transversal[to] = compose(transversal[bidx], p);
        queue.push_back(to);
      }
    }
  }

  GroupBuilder builder(d);
  for (int bidx = 0; bidx < s; ++bidx) {
    if (!seen[bidx]) continue;  // intransitive on blocks: skip other orbits
    for (const Permutation& p : g.generators()) {
      int to = owner[p(sys.blocks[bidx].front())];
      Permutation schreier =
          compose(compose(transversal[bidx], p), transversal[to].inverse());
      // schreier stabilizes the block setwise; restrict it.
      std::vector<int> img(d);
      for (int i = 0; i < d; ++i) img[i] = local[schreier(block[i])];
      builder.add(Permutation(img));
    }
  }
  return PermutationGroup(std::move(builder));
}

}  // namespace relkit
