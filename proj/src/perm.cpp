#include "relkit/perm.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

#include "relkit/error.hpp"

namespace relkit {

std::vector<int> mask_points(mask_t m) {
  std::vector<int> pts;
  pts.reserve(static_cast<std::size_t>(popcount(m)));
  while (m) {
    int i = std::countr_zero(m);
    pts.push_back(i);
    m &= m - 1;
  }
  return pts;
}

mask_t points_mask(const std::vector<int>& points) {
  mask_t m = 0;
  for (int p : points) m |= bit(p);
  return m;
}

std::vector<mask_t> k_subsets(int degree, int k) {
  std::vector<mask_t> out;
  if (k < 0 || k > degree) return out;
  if (k == 0) {
    out.push_back(0);
    return out;
  }
  for (mask_t m = full_mask(k); m != 0; m = next_k_subset(m, degree))
    out.push_back(m);
  return out;
}

Permutation::Permutation(int degree) : img_(degree) {
  if (degree < 0 || degree > kMaxDegree)
    throw precondition_error("argument", "permutation degree out of range");
  std::iota(img_.begin(), img_.end(), std::uint8_t{0});
}

Permutation::Permutation(std::vector<std::uint8_t> images)
    : img_(std::move(images)) {
  if (degree() > kMaxDegree)
    throw precondition_error("argument", "permutation degree out of range");
  std::vector<bool> seen(img_.size(), false);
  for (auto v : img_) {
    if (v >= img_.size() || seen[v])
      throw precondition_error("argument", "image table is not a permutation");
    seen[v] = true;
  }
}

Permutation::Permutation(const std::vector<int>& images)
    : Permutation([&] {
        std::vector<std::uint8_t> v;
        v.reserve(images.size());
        for (int x : images) {
          if (x < 0 || x > 255)
            throw precondition_error("argument", "image out of range");
          v.push_back(static_cast<std::uint8_t>(x));
        }
        return v;
      }()) {}

bool Permutation::is_identity() const {
  for (int i = 0; i < degree(); ++i)
    if (img_[i] != i) return false;
  return true;
}

mask_t Permutation::apply(mask_t subset) const {
  mask_t out = 0;
  while (subset) {
    int i = std::countr_zero(subset);
    subset &= subset - 1;
    out |= bit(img_[i]);
  }
  return out;
}

Permutation Permutation::inverse() const {
  std::vector<std::uint8_t> inv(img_.size());
  for (int i = 0; i < degree(); ++i) inv[img_[i]] = static_cast<std::uint8_t>(i);
  return Permutation(std::move(inv));
}

int Permutation::cycle_count() const {
  int count = 0;
  mask_t seen = 0;
  for (int i = 0; i < degree(); ++i) {
    if (seen & bit(i)) continue;
    ++count;
    for (int j = i; !(seen & bit(j)); j = img_[j]) seen |= bit(j);
  }
  return count;
}

std::vector<mask_t> Permutation::cycle_masks() const {
  std::vector<mask_t> cycles;
  mask_t seen = 0;
  for (int i = 0; i < degree(); ++i) {
    if (seen & bit(i)) continue;
    mask_t c = 0;
    for (int j = i; !(c & bit(j)); j = img_[j]) c |= bit(j);
    seen |= c;
    cycles.push_back(c);
  }
  return cycles;
}

std::vector<int> Permutation::cycle_lengths() const {
  std::vector<int> lens;
  for (mask_t c : cycle_masks()) lens.push_back(popcount(c));
  std::sort(lens.rbegin(), lens.rend());
  return lens;
}

bool Permutation::is_even() const {
  int transpositions = 0;
  for (int len : cycle_lengths()) transpositions += len - 1;
  return transpositions % 2 == 0;
}

Permutation Permutation::extended(int degree) const {
  if (degree < this->degree())
    throw precondition_error("argument", "cannot shrink a permutation");
  std::vector<std::uint8_t> v(img_);
  for (int i = this->degree(); i < degree; ++i)
    v.push_back(static_cast<std::uint8_t>(i));
  return Permutation(std::move(v));
}

Permutation compose(const Permutation& p, const Permutation& q) {
  if (p.degree() != q.degree())
    throw precondition_error("argument", "compose: degree mismatch");
  std::vector<std::uint8_t> v(p.degree());
  for (int i = 0; i < p.degree(); ++i)
    v[i] = static_cast<std::uint8_t>(q(p(i)));
  return Permutation(std::move(v));
}

Permutation conjugate(const Permutation& p, const Permutation& q) {
  return compose(compose(q.inverse(), p), q);
}

Permutation commutator(const Permutation& p, const Permutation& q) {
  return compose(compose(p.inverse(), q.inverse()), compose(p, q));
}

namespace {

struct Cursor {
  const std::string& s;
  std::size_t i = 0;
  bool done() const { return i >= s.size(); }
  char peek() const { return s[i]; }
  void skip_ws() {
    while (!done() && (s[i] == ' ' || s[i] == '\t')) ++i;
  }
};

int parse_int(Cursor& c) {
  c.skip_ws();
  std::size_t start = c.i;
  while (!c.done() && std::isdigit(static_cast<unsigned char>(c.peek()))) ++c.i;
  if (c.i == start) throw parse_error("expected a point number", start);
  int value = 0;
  for (std::size_t j = start; j < c.i; ++j) {
    value = value * 10 + (c.s[j] - '0');
    if (value > 1'000'000) throw parse_error("point number too large", start);
  }
  return value;
}

}  // namespace

ParsedPermutation parse_permutation_loose(const std::string& text) {
  Cursor c{text};
  std::vector<std::vector<int>> cycles;
  std::optional<int> declared;
  int max_point = 0;

  c.skip_ws();
  if (c.done()) throw parse_error("empty permutation", 0);
  while (!c.done()) {
    c.skip_ws();
    if (c.done()) break;
    if (c.peek() == '@') {
      ++c.i;
      int d = parse_int(c);
      if (d < 1 || d > kMaxDegree)
        throw parse_error("declared degree out of range", c.i);
      declared = d;
      c.skip_ws();
      if (!c.done()) throw parse_error("trailing text after @degree", c.i);
      break;
    }
    if (c.peek() != '(') throw parse_error("expected '('", c.i);
    ++c.i;
    std::vector<int> cycle;
    c.skip_ws();
    while (!c.done() && c.peek() != ')') {
      int p = parse_int(c);
      if (p < 1) throw parse_error("points are 1-based", c.i);
      cycle.push_back(p);
      max_point = std::max(max_point, p);
      c.skip_ws();
      if (!c.done() && c.peek() == ',') {
        ++c.i;
        c.skip_ws();
      }
    }
    if (c.done()) throw parse_error("unterminated cycle", c.i);
    ++c.i;  // ')'
    if (!cycle.empty()) cycles.push_back(std::move(cycle));
  }

  int degree = std::max(max_point, declared.value_or(0));
  if (declared && *declared < max_point)
    throw parse_error("declared degree smaller than a moved point");
  if (max_point > kMaxDegree) throw parse_error("point exceeds max degree");

  std::vector<std::uint8_t> img(degree);
  std::iota(img.begin(), img.end(), std::uint8_t{0});
  std::vector<bool> used(degree + 1, false);
  for (const auto& cycle : cycles) {
    for (int p : cycle) {
      if (used[p]) throw parse_error("point repeated across cycles");
      used[p] = true;
    }
    for (std::size_t j = 0; j < cycle.size(); ++j) {
      int from = cycle[j] - 1;
      int to = cycle[(j + 1) % cycle.size()] - 1;
      img[from] = static_cast<std::uint8_t>(to);
    }
  }
  return ParsedPermutation{Permutation(std::move(img)), declared};
}

Permutation parse_permutation(const std::string& text,
                              std::optional<int> degree) {
  ParsedPermutation parsed = parse_permutation_loose(text);
  int d = parsed.perm.degree();
  if (parsed.declared_degree) d = std::max(d, *parsed.declared_degree);
  if (degree) {
    if (*degree < d)
      throw parse_error("permutation moves a point beyond the given degree");
    d = *degree;
  }
  return parsed.perm.extended(d);
}

std::string to_cycle_string(const Permutation& p) {
  std::string out;
  mask_t seen = 0;
  for (int i = 0; i < p.degree(); ++i) {
    if ((seen & bit(i)) || p(i) == i) {
      seen |= bit(i);
      continue;
    }
    out += '(';
    bool first = true;
    for (int j = i; !(seen & bit(j)); j = p(j)) {
      seen |= bit(j);
      if (!first) out += ',';
      out += std::to_string(j + 1);
      first = false;
    }
    out += ')';
  }
  if (out.empty()) out = "()";
  return out;
}

}  // namespace relkit
