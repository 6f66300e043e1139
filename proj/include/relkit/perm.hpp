#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "relkit/subset.hpp"

namespace relkit {

// An element of Sym({0..n-1}) as an image table.  Composition is left to
// right: x^(p*q) = (x^p)^q, matching the right action used everywhere.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(int degree);  // identity
  explicit Permutation(std::vector<std::uint8_t> images);
  explicit Permutation(const std::vector<int>& images);

  int degree() const { return static_cast<int>(img_.size()); }
  int operator()(int point) const { return img_[point]; }
  bool is_identity() const;

  // Image of a subset under the right action.
  mask_t apply(mask_t subset) const;

  Permutation inverse() const;

  // Cycle data; fixed points count as 1-cycles.
  int cycle_count() const;
  std::vector<mask_t> cycle_masks() const;      // one mask per cycle
  std::vector<int> cycle_lengths() const;       // descending
  bool is_even() const;                         // parity

  // Same permutation extended to a larger degree by fixed points.
  Permutation extended(int degree) const;

  bool operator==(const Permutation&) const = default;
  auto operator<=>(const Permutation&) const = default;

  const std::vector<std::uint8_t>& images() const { return img_; }

 private:
  std::vector<std::uint8_t> img_;
};

// p then q.
Permutation compose(const Permutation& p, const Permutation& q);
inline Permutation operator*(const Permutation& p, const Permutation& q) {
  return compose(p, q);
}

// q^-1 p q.
Permutation conjugate(const Permutation& p, const Permutation& q);

// Commutator p^-1 q^-1 p q.
Permutation commutator(const Permutation& p, const Permutation& q);

// --- cycle notation ------------------------------------------------------
//
// Text form uses 1-based points: "(1,2,3)(4,5)" or "(1 2 3)(4 5)"; "()" is
// the identity.  An optional "@n" suffix pins the degree; otherwise the
// degree is max moved point (or `degree` if given and larger).

Permutation parse_permutation(const std::string& text,
                              std::optional<int> degree = std::nullopt);

std::string to_cycle_string(const Permutation& p);

struct ParsedPermutation {
  Permutation perm;
  std::optional<int> declared_degree;  // from "@n" if present
};

// Parse without forcing a degree; exposes a declared "@n" suffix so callers
// can reconcile degrees across a generator list.
ParsedPermutation parse_permutation_loose(const std::string& text);

}  // namespace relkit
