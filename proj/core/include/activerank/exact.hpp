#pragma once

#include <cstdint>
#include <span>

#include "activerank/oracles.hpp"
#include "activerank/types.hpp"

namespace activerank {

/// Largest instance (or block) the exact solvers accept.
inline constexpr std::size_t kExactLimit = 20;

struct RankedCost {
  Permutation order;
  std::uint64_t cost = 0;
};

/// Global MFAST optimum by dynamic programming over subsets, O(2^n n).
/// Among optimal orders the lexicographically smallest is returned.
/// Throws std::invalid_argument above kExactLimit elements.
RankedCost brute_force_mfast(const PreferenceOracle& w);

/// Same, restricted to `elements` (ids keep their values).
RankedCost brute_force_mfast(std::span<const ElementId> elements,
                             const PreferenceOracle& w);

/// Minimizer of the cost over permutations respecting `d`: per-block optima
/// concatenated in block order. The reported cost includes cross-block
/// backward pairs. Throws std::invalid_argument if a block exceeds
/// kExactLimit.
RankedCost best_respecting(const OrderedDecomposition& d,
                           const PreferenceOracle& w);

struct EpsGoodReport {
  double local_chaos_lhs = 0;   // sum over big blocks of the block optimum
  double local_chaos_rhs = 0;   // eps^2 * sum over big blocks of C(n_i, 2)
  std::uint64_t respecting_opt = 0;
  std::uint64_t global_opt = 0;
  bool local_chaos = false;
  bool approx_optimal = false;  // respecting_opt <= (1 + eps) * global_opt
};

/// Evaluates both conditions of an eps-good decomposition exactly.
/// Throws std::invalid_argument above kExactLimit elements.
EpsGoodReport check_eps_good(const OrderedDecomposition& d,
                             const PreferenceOracle& w, double eps);

}  // namespace activerank
