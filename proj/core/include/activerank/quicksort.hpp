#pragma once

#include <span>

#include "activerank/query.hpp"
#include "activerank/random.hpp"
#include "activerank/types.hpp"

namespace activerank {

/// Randomized one-pivot QuickSort over a tournament: a uniformly random pivot
/// splits the remaining elements by their label against it, and both sides
/// recurse. Expected O(n log n) queries (charged to phase::kQuickSort) and an
/// expected constant-factor approximation of the optimal backward cost.
Permutation quicksort_rank(std::span<const ElementId> elements,
                           const QueryContext& ctx, RandomSource& rng);

}  // namespace activerank
