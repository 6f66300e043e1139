#include "relkit/perm_group.hpp"

#include <algorithm>
#include <deque>

#include "relkit/error.hpp"

namespace relkit {

std::uint64_t factorial(int n) {
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) {
    if (f > UINT64_MAX / static_cast<std::uint64_t>(i))
      throw error("factorial overflows 64 bits");
    f *= static_cast<std::uint64_t>(i);
  }
  return f;
}

GroupBuilder::GroupBuilder(int degree, std::vector<int> forced_base)
    : degree_(degree), forced_base_(std::move(forced_base)) {
  if (degree < 1 || degree > kMaxDegree)
    throw precondition_error("argument", "group degree out of range");
  for (int b : forced_base_)
    if (b < 0 || b >= degree)
      throw precondition_error("argument", "forced base point out of range");
}

void GroupBuilder::rebuild_transversal(int level) {
  Level& lv = levels_[level];
  lv.orbit.clear();
  lv.transversal_by_point.assign(degree_, Permutation());
  lv.inverse_by_point.assign(degree_, Permutation());
  lv.in_orbit.assign(degree_, false);

  std::deque<int> queue;
  Permutation id(degree_);
  lv.in_orbit[lv.base_point] = true;
  lv.transversal_by_point[lv.base_point] = id;
  lv.inverse_by_point[lv.base_point] = id;
  queue.push_back(lv.base_point);
  while (!queue.empty()) {
    int p = queue.front();
    queue.pop_front();
    for (const Permutation& g : lv.gens) {
      int q = g(p);
      if (!lv.in_orbit[q]) {
        lv.in_orbit[q] = true;
        lv.transversal_by_point[q] = compose(lv.transversal_by_point[p], g);
        lv.inverse_by_point[q] = lv.transversal_by_point[q].inverse();
        queue.push_back(q);
      }
    }
  }
  lv.orbit.clear();
  for (int p = 0; p < degree_; ++p)
    if (lv.in_orbit[p]) lv.orbit.push_back(p);
}

std::pair<Permutation, int> GroupBuilder::sift(Permutation g) const {
  for (std::size_t i = 0; i < levels_.size(); ++i) {
    int p = g(levels_[i].base_point);
    if (!levels_[i].in_orbit[p]) return {std::move(g), static_cast<int>(i)};
    g = compose(g, levels_[i].rep_inverse(p));
  }
  return {std::move(g), static_cast<int>(levels_.size())};
}

bool GroupBuilder::contains(const Permutation& g) const {
  if (g.degree() != degree_)
    throw precondition_error("argument", "membership test: degree mismatch");
  auto [residue, level] = sift(g);
  return level == static_cast<int>(levels_.size()) && residue.is_identity();
}

int GroupBuilder::pick_base_point(const Permutation& g) {
  while (forced_used_ < forced_base_.size()) {
    int b = forced_base_[forced_used_++];
    bool taken = false;
    for (const Level& lv : levels_)
      if (lv.base_point == b) taken = true;
    if (!taken) return b;
  }
  for (int i = 0; i < degree_; ++i)
    if (g(i) != i) {
      bool taken = false;
      for (const Level& lv : levels_)
        if (lv.base_point == i) taken = true;
      if (!taken) return i;
    }
  throw error("internal: no base point available");
}

void GroupBuilder::insert_strong_generator(const Permutation& g, int level) {
  // g fixes the base points of all levels before `level`; it joins the
  // generating sets of levels 0..level (their groups genuinely grow).
  if (level == static_cast<int>(levels_.size())) {
    Level lv;
    lv.base_point = pick_base_point(g);
    levels_.push_back(std::move(lv));
  }
  for (int j = 0; j <= level; ++j) {
    levels_[j].gens.push_back(g);
    rebuild_transversal(j);
  }
  for (int j = level; j >= 0; --j) verify_level(j);
}

void GroupBuilder::verify_level(int level) {
  // Chain condition at `level`, assuming deeper levels are verified: every
  // Schreier generator of the base-point stabilizer must sift to identity.
  // Fixes go to deeper levels only, so one pass over (orbit x gens) suffices.
  for (std::size_t oi = 0; oi < levels_[level].orbit.size(); ++oi) {
    for (std::size_t gi = 0; gi < levels_[level].gens.size(); ++gi) {
      int p = levels_[level].orbit[oi];
      Permutation x = levels_[level].gens[gi];
      Permutation h = compose(compose(levels_[level].rep(p), x),
                              levels_[level].rep_inverse(x(p)));
      int l = level + 1;
      for (; l < static_cast<int>(levels_.size()); ++l) {
        int q = h(levels_[l].base_point);
        if (!levels_[l].in_orbit[q]) break;
        h = compose(h, levels_[l].rep_inverse(q));
      }
      if (h.is_identity()) continue;
      if (l == static_cast<int>(levels_.size())) {
        Level lv;
        lv.base_point = pick_base_point(h);
        levels_.push_back(std::move(lv));
      }
      for (int j = level + 1; j <= l; ++j) {
        levels_[j].gens.push_back(h);
        rebuild_transversal(j);
      }
      for (int j = l; j > level; --j) verify_level(j);
    }
  }
}

bool GroupBuilder::add(const Permutation& g) {
  if (g.degree() != degree_)
    throw precondition_error("argument", "generator degree mismatch");
  if (g.is_identity()) return false;
  auto [residue, level] = sift(g);
  if (level == static_cast<int>(levels_.size()) && residue.is_identity())
    return false;
  input_gens_.push_back(g);
  insert_strong_generator(residue, level);
  return true;
}

std::uint64_t GroupBuilder::order() const {
  std::uint64_t o = 1;
  for (const Level& lv : levels_) {
    std::uint64_t len = lv.orbit.size();
    if (o > UINT64_MAX / len) throw error("group order overflows 64 bits");
    o *= len;
  }
  return o;
}

// --- PermutationGroup ------------------------------------------------------

struct PermutationGroup::Data {
  int degree;
  std::vector<Permutation> gens;
  GroupBuilder chain;
  std::uint64_t order;

  Data(int d, std::vector<Permutation> g, GroupBuilder c)
      : degree(d), gens(std::move(g)), chain(std::move(c)), order(chain.order()) {}
};

PermutationGroup::PermutationGroup(int degree)
    : PermutationGroup(degree, {}) {}

PermutationGroup::PermutationGroup(int degree,
                                   const std::vector<Permutation>& gens) {
  GroupBuilder b(degree);
  std::vector<Permutation> kept;
  for (const Permutation& g : gens) {
    if (g.degree() != degree)
      throw precondition_error("argument", "generator degree mismatch");
    if (g.is_identity()) continue;
    if (std::find(kept.begin(), kept.end(), g) == kept.end()) kept.push_back(g);
    b.add(g);
  }
  data_ = std::make_shared<Data>(degree, std::move(kept), std::move(b));
}

PermutationGroup::PermutationGroup(GroupBuilder&& builder) {
  int d = builder.degree();
  std::vector<Permutation> gens = builder.generators();
  data_ = std::make_shared<Data>(d, std::move(gens), std::move(builder));
}

int PermutationGroup::degree() const { return data_->degree; }
std::uint64_t PermutationGroup::order() const { return data_->order; }

bool PermutationGroup::contains(const Permutation& g) const {
  return data_->chain.contains(g);
}

bool PermutationGroup::is_subgroup_of(const PermutationGroup& other) const {
  if (degree() != other.degree()) return false;
  for (const Permutation& g : generators())
    if (!other.contains(g)) return false;
  return true;
}

const std::vector<Permutation>& PermutationGroup::generators() const {
  return data_->gens;
}

const std::vector<GroupBuilder::Level>& PermutationGroup::levels() const {
  return data_->chain.levels();
}

std::vector<int> PermutationGroup::base() const {
  std::vector<int> b;
  for (const auto& lv : levels()) b.push_back(lv.base_point);
  return b;
}

std::vector<int> PermutationGroup::point_orbit(int point) const {
  std::vector<bool> seen(degree(), false);
  std::deque<int> queue{point};
  seen[point] = true;
  while (!queue.empty()) {
    int p = queue.front();
    queue.pop_front();
    for (const Permutation& g : generators()) {
      int q = g(p);
      if (!seen[q]) {
        seen[q] = true;
        queue.push_back(q);
      }
    }
  }
  std::vector<int> orbit;
  for (int p = 0; p < degree(); ++p)
    if (seen[p]) orbit.push_back(p);
  return orbit;
}

std::vector<std::vector<int>> PermutationGroup::point_orbits() const {
  std::vector<std::vector<int>> orbits;
  std::vector<bool> seen(degree(), false);
  for (int p = 0; p < degree(); ++p) {
    if (seen[p]) continue;
    auto orbit = point_orbit(p);
    for (int q : orbit) seen[q] = true;
    orbits.push_back(std::move(orbit));
  }
  return orbits;
}

bool PermutationGroup::is_transitive() const {
  if (degree() <= 1) return true;
  return static_cast<int>(point_orbit(0).size()) == degree();
}

void PermutationGroup::for_each_element(
    const std::function<bool(const Permutation&)>& fn,
    std::uint64_t cap) const {
  if (order() > cap)
    throw cap_exceeded("element_iteration_cap",
                       "group order " + std::to_string(order()) +
                           " exceeds cap " + std::to_string(cap));
  const auto& levels = data_->chain.levels();
  int m = static_cast<int>(levels.size());
  if (m == 0) {
    fn(Permutation(degree()));
    return;
  }
  // Element = u^{m-1} * ... * u^0 (left-to-right composition).  suffix[i]
  // caches u^{m-1} * ... * u^{i+1}.
  std::vector<std::size_t> idx(m, 0);
  std::vector<Permutation> suffix(m + 1);
  suffix[m] = Permutation(degree());
  auto refresh = [&](int from) {
    for (int i = from; i >= 1; --i)
      suffix[i] =
          compose(suffix[i + 1], levels[i].rep(levels[i].orbit[idx[i]]));
  };
  refresh(m - 1);
  while (true) {
    Permutation g = compose(suffix[1], levels[0].rep(levels[0].orbit[idx[0]]));
    if (!fn(g)) return;
    int i = 0;
    while (i < m && ++idx[i] == levels[i].orbit.size()) {
      idx[i] = 0;
      ++i;
    }
    if (i == m) return;
    if (i >= 1) refresh(i);
  }
}

std::vector<Permutation> PermutationGroup::elements(std::uint64_t cap) const {
  std::vector<Permutation> out;
  out.reserve(order() > cap ? 0 : order());
  for_each_element(
      [&](const Permutation& g) {
        out.push_back(g);
        return true;
      },
      cap);
  return out;
}

Permutation PermutationGroup::min_coset_rep(const Permutation& g) const {
  // Minimize the image tuple of c*g over c in this group, walking a chain
  // whose base is 0,1,...,n-1 in order.
  const auto& levels = data_->chain.levels();
  Permutation current = g;
  std::size_t li = 0;
  for (int point = 0; point < degree(); ++point) {
    if (li >= levels.size()) break;
    if (levels[li].base_point != point) continue;  // stabilized; no freedom
    const auto& lv = levels[li];
    int best_point = -1;
    int best_image = 1 << 30;
    for (int p : lv.orbit) {
      int image = current(p);
      if (image < best_image) {
        best_image = image;
        best_point = p;
      }
    }
    current = compose(lv.rep(best_point), current);
    ++li;
  }
  return current;
}

PermutationGroup PermutationGroup::rebased_full() const {
  std::vector<int> base(degree());
  for (int i = 0; i < degree(); ++i) base[i] = i;
  GroupBuilder b(degree(), base);
  for (const Permutation& g : generators()) b.add(g);
  return PermutationGroup(std::move(b));
}

PermutationGroup PermutationGroup::symmetric(int degree) {
  std::vector<Permutation> gens;
  if (degree >= 2) {
    std::vector<int> img(degree);
    for (int i = 0; i < degree; ++i) img[i] = i;
    std::swap(img[0], img[1]);
    gens.emplace_back(img);
    if (degree >= 3) {
      for (int i = 0; i < degree; ++i) img[i] = (i + 1) % degree;
      gens.emplace_back(img);
    }
  }
  return PermutationGroup(degree, gens);
}

PermutationGroup PermutationGroup::alternating(int degree) {
  std::vector<Permutation> gens;
  for (int k = 2; k < degree; ++k) {
    std::vector<int> img(degree);
    for (int i = 0; i < degree; ++i) img[i] = i;
    img[0] = 1;
    img[1] = k;
    img[k] = 0;
    gens.emplace_back(img);
  }
  return PermutationGroup(degree, gens);
}

PermutationGroup PermutationGroup::cyclic(int degree) {
  std::vector<Permutation> gens;
  if (degree >= 2) {
    std::vector<int> img(degree);
    for (int i = 0; i < degree; ++i) img[i] = (i + 1) % degree;
    gens.emplace_back(img);
  }
  return PermutationGroup(degree, gens);
}

PermutationGroup PermutationGroup::dihedral(int degree) {
  if (degree < 3) return symmetric(degree);
  std::vector<int> rot(degree), refl(degree);
  for (int i = 0; i < degree; ++i) {
    rot[i] = (i + 1) % degree;
    refl[i] = (degree - i) % degree;
  }
  return PermutationGroup(degree, {Permutation(rot), Permutation(refl)});
}

PermutationGroup PermutationGroup::trivial(int degree) {
  return PermutationGroup(degree);
}

// --- derived structure ------------------------------------------------------

PermutationGroup normal_closure(const PermutationGroup& g,
                                const std::vector<Permutation>& seeds) {
  GroupBuilder b(g.degree());
  std::deque<Permutation> work;
  for (const Permutation& s : seeds)
    if (b.add(s)) work.push_back(s);
  while (!work.empty()) {
    Permutation x = std::move(work.front());
    work.pop_front();
    for (const Permutation& f : g.generators()) {
      Permutation c = conjugate(x, f);
      if (b.add(c)) work.push_back(std::move(c));
    }
  }
  return PermutationGroup(std::move(b));
}

PermutationGroup derived_subgroup(const PermutationGroup& g) {
  std::vector<Permutation> comms;
  const auto& gens = g.generators();
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      comms.push_back(commutator(gens[i], gens[j]));
  return normal_closure(g, comms);
}

bool is_solvable(const PermutationGroup& g) {
  PermutationGroup current = g;
  while (current.order() > 1) {
    PermutationGroup next = derived_subgroup(current);
    if (next.order() == current.order()) return false;
    current = std::move(next);
  }
  return true;
}

SymAltKind sym_alt_kind(const PermutationGroup& g) {
  int n = g.degree();
  if (n <= 1) return g.order() == 1 ? SymAltKind::Symmetric : SymAltKind::Neither;
  std::uint64_t nf;
  try {
    nf = factorial(n);
  } catch (const error&) {
    return SymAltKind::Neither;  // order() would have overflowed first anyway
  }
  if (g.order() == nf) return SymAltKind::Symmetric;
  if (n >= 3 && g.order() == nf / 2) {
    for (const Permutation& p : g.generators())
      if (!p.is_even()) return SymAltKind::Neither;
    return SymAltKind::Alternating;
  }
  return SymAltKind::Neither;
}

}  // namespace relkit
