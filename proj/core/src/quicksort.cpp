#include "activerank/quicksort.hpp"

#include <utility>
#include <vector>

namespace activerank {

namespace {

// Sorts items[lo, hi) in place. An explicit stack keeps adversarial inputs
// from exhausting the call stack.
void sort_range(std::vector<ElementId>& items, const QueryContext& ctx,
                RandomSource& rng) {
  std::vector<std::pair<std::size_t, std::size_t>> pending{{0, items.size()}};
  std::vector<ElementId> before;
  std::vector<ElementId> after;
  while (!pending.empty()) {
    const auto [lo, hi] = pending.back();
    pending.pop_back();
    if (hi - lo < 2) continue;
    const std::size_t pivot_index = lo + rng.index(hi - lo);
    const ElementId pivot = items[pivot_index];
    before.clear();
    after.clear();
    for (std::size_t k = lo; k < hi; ++k) {
      if (k == pivot_index) continue;
      const ElementId v = items[k];
      if (ctx.prefers(v, pivot, phase::kQuickSort)) {
        before.push_back(v);
      } else {
        after.push_back(v);
      }
    }
    std::size_t out = lo;
    for (ElementId v : before) items[out++] = v;
    const std::size_t pivot_slot = out;
    items[out++] = pivot;
    for (ElementId v : after) items[out++] = v;
    pending.emplace_back(pivot_slot + 1, hi);
    pending.emplace_back(lo, pivot_slot);
  }
}

}  // namespace

Permutation quicksort_rank(std::span<const ElementId> elements,
                           const QueryContext& ctx, RandomSource& rng) {
  std::vector<ElementId> items(elements.begin(), elements.end());
  sort_range(items, ctx, rng);
  return Permutation(std::move(items));
}

}  // namespace activerank
