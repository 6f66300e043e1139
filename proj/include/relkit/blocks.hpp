#pragma once

#include <vector>

#include "relkit/perm_group.hpp"

namespace relkit {

// A system of imprimitivity: blocks partition {0..n-1}, each block sorted,
// blocks ordered by minimum element.
struct BlockSystem {
  std::vector<std::vector<int>> blocks;

  int degree() const;
  int block_count() const { return static_cast<int>(blocks.size()); }
  int block_size() const;            // blocks of a system share one size
  int block_of(int point) const;     // index into blocks

  bool operator==(const BlockSystem&) const = default;
};

// Finest G-congruence identifying a and b (union-find seed algorithm).
// Pre: G transitive.  The returned partition is a block system; it is the
// trivial one-block system when {a,b} generates everything.
BlockSystem block_system_from_seed(const PermutationGroup& g, int a, int b);

// All block systems whose blocks are inclusion-minimal non-trivial blocks,
// one per G-class of minimal block.  Pre: G transitive, degree >= 2.
// Empty result == primitive.
std::vector<BlockSystem> minimal_block_systems(const PermutationGroup& g);

// Pre: degree >= 2 (throws precondition_error otherwise); intransitive
// groups are reported imprimitive.
bool is_primitive(const PermutationGroup& g);

// Action of G on the blocks of a system (degree = block count).
PermutationGroup block_action(const PermutationGroup& g, const BlockSystem& b);

// Group induced on one block by its setwise stabilizer, relabelled to
// {0..|block|-1} in sorted point order.  Uses Schreier generators of the
// block stabilizer, so it never iterates elements.
PermutationGroup induced_block_group(const PermutationGroup& g,
                                     const BlockSystem& system,
                                     int block_index);

}  // namespace relkit
