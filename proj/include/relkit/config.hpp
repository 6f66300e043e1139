#pragma once

#include <cstdint>

namespace relkit {

// Work and size caps.  Every potentially explosive computation takes a Config
// (defaulted) and raises cap_exceeded instead of silently degrading.  All
// values are ordinary data so callers and the CLI can override them.
struct Config {
  // Full element iteration (setwise stabilizers, censuses) only below this.
  std::uint64_t element_iteration_cap = 1'000'000;

  // Regular-set census: degree bound for the 2^n bitmap and the total
  // sum_{g != 1} 2^{c(g)} marking-work bound.
  int census_max_degree = 28;
  std::uint64_t census_work_cap = std::uint64_t{1} << 30;

  // Exhaustive invariance-group backtracking over Sym(n) without a candidate.
  int exhaustive_invariance_max_degree = 12;

  // Orbit-closure / k-closure sweeps over Sym(n).
  int closure_max_degree = 10;

  // relation_closure exact search: per-layer cap on enumerated orbit unions
  // and cap on the number of right cosets of the orbit closure in Sym(n).
  std::uint64_t per_layer_union_cap = 4096;  // 2^12
  std::uint64_t coset_cap = 250'000;

  // Imprimitivity-chain enumeration.
  int max_chains = 64;

  // Worker threads (0 = auto: RELKIT_THREADS if set, else hardware
  // concurrency clamped to [1,8]).
  int threads = 0;
};

// Resolved thread count for this configuration (applies RELKIT_THREADS).
int effective_threads(const Config& cfg);

}  // namespace relkit
