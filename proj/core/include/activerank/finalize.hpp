#pragma once

#include <cstdint>
#include <span>

#include "activerank/config.hpp"
#include "activerank/decompose.hpp"
#include "activerank/query.hpp"
#include "activerank/random.hpp"

namespace activerank {

struct FinalRanking {
  Permutation order;
  std::uint64_t block_sample_draws = 0;
};

/// A full ranking respecting the decomposition. Small blocks are read in full
/// (phase::kSmallBlock) and solved exactly. Big blocks, when c_final > 0,
/// draw ceil(c_final * eps^-6 * n * ln n) pairs with repetition over the
/// union of their pairs (phase::kBlockSample) and are reordered by insertion
/// search on the sampled cost, starting from the decomposition's own order.
FinalRanking finalize_ranking(const Decomposition& d, const QueryContext& ctx,
                              double eps, const DecomposeConfig& config,
                              RandomSource& rng);

/// A preference of weight `weight` for `before` to precede `after`.
struct WeightedArc {
  ElementId before;
  ElementId after;
  std::uint64_t weight;
};

/// Insertion local search on a weighted feedback arc set over the elements of
/// `start`: repeatedly moves one element to its cheapest slot while that
/// strictly lowers the total weight of violated arcs, for at most
/// `max_passes` passes over the elements.
Permutation insertion_search(const Permutation& start, std::span<const WeightedArc> arcs,
                             std::size_t max_passes = 100);

}  // namespace activerank
