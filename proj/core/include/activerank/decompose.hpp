#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "activerank/config.hpp"
#include "activerank/ensemble.hpp"
#include "activerank/query.hpp"
#include "activerank/random.hpp"
#include "activerank/types.hpp"

namespace activerank {

enum class BlockKind {
  kSmall,  // at most ln n / ln ln n elements
  kChaos,  // estimated cost reached c_chaos * eps^2 * N^2
};

const char* to_string(BlockKind kind);

struct LocalImproveResult {
  Permutation order;
  bool skipped = false;        // block below the size threshold
  std::size_t moves = 0;
  bool guard_tripped = false;  // stopped by the move cap, not by convergence
  RefreshStats refresh;
  std::size_t audited_moves = 0;
  std::size_t non_improving_moves = 0;  // audited moves with exact TestMove <= 0
};

/// Repeated sampled single-element moves on one block. Returns pi unchanged
/// when N <= c_small * eps^-3 * ln^3 n. Labels are charged to
/// phase::kEnsemble.
LocalImproveResult local_improve(const Permutation& pi, const QueryContext& ctx,
                                 double eps, std::size_t n,
                                 const DecomposeConfig& config, RandomSource& rng);

enum class CostSampling {
  kSampled,  // ceil(c_cost_sample * eps^-4 * ln n) uniform pairs with repetition
  kFull,     // every pair once; returns the exact cost
};

/// Estimate of the cost of `pi` on its own element set, charged to
/// phase::kChaosTest. Requires at least two elements and n >= 2.
double estimate_block_cost(const Permutation& pi, const QueryContext& ctx, double eps,
                           std::size_t n, const DecomposeConfig& config,
                           RandomSource& rng,
                           CostSampling sampling = CostSampling::kSampled);

struct DecomposeStats {
  std::size_t max_depth = 0;
  std::size_t local_improve_calls = 0;
  std::size_t local_improve_runs = 0;  // calls above the size threshold
  std::size_t moves = 0;
  std::size_t guard_trips = 0;
  std::size_t audited_moves = 0;
  std::size_t non_improving_moves = 0;
  RefreshStats refresh;
};

/// An ordered decomposition together with, per block, why the recursion
/// stopped there and the order the algorithm held for it.
struct Decomposition {
  OrderedDecomposition blocks;
  std::vector<BlockKind> kinds;
  std::vector<Permutation> block_orders;
  DecomposeStats stats;

  /// Concatenation of the block orders.
  Permutation order() const;
};

/// Recursive decomposition of the elements of `pi` (a block of a root
/// instance of size n): small exit, chaos test, LocalImprove, random split at
/// k in [N/3, 2N/3] of the improved order, recursion on both sides.
Decomposition sample_and_rank(const Permutation& pi, const QueryContext& ctx,
                              double eps, std::size_t n, const DecomposeConfig& config,
                              RandomSource& rng);

/// QuickSort followed by sample_and_rank on the whole set. Throws
/// std::invalid_argument unless 0 < eps < 1.
Decomposition sample_and_rank_root(std::span<const ElementId> elements,
                                   const QueryContext& ctx, double eps,
                                   const DecomposeConfig& config, RandomSource& rng);

/// {"blocks": [[ids]], "flags": ["small"|"chaos"], "stats": {...}}
void to_json(nlohmann::json& j, const Decomposition& d);

}  // namespace activerank
