#include "activerank/exact.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace activerank {

namespace {

void require_exact_size(std::size_t n) {
  if (n > kExactLimit) {
    throw std::invalid_argument("exact solver limited to " + std::to_string(kExactLimit) +
                                " elements, got " + std::to_string(n));
  }
}

std::uint64_t cross_block_cost(const OrderedDecomposition& d, const PreferenceOracle& w) {
  std::uint64_t cost = 0;
  for (std::size_t i = 0; i < d.block_count(); ++i) {
    for (std::size_t j = i + 1; j < d.block_count(); ++j) {
      for (ElementId u : d.block(i)) {
        for (ElementId v : d.block(j)) cost += w.prefers(v, u) ? 1 : 0;
      }
    }
  }
  return cost;
}

}  // namespace

RankedCost brute_force_mfast(const PreferenceOracle& w) {
  std::vector<ElementId> all(w.size());
  std::iota(all.begin(), all.end(), ElementId{0});
  return brute_force_mfast(all, w);
}

RankedCost brute_force_mfast(std::span<const ElementId> elements,
                             const PreferenceOracle& w) {
  const std::size_t n = elements.size();
  require_exact_size(n);
  if (n == 0) return {};

  // beaten_by[a]: local indices b with W(b, a) = 1.
  std::vector<std::uint32_t> beaten_by(n, 0);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (a != b && w.prefers(elements[b], elements[a])) beaten_by[a] |= 1U << b;
    }
  }

  // best[S]: cheapest order of the still-unplaced set S. Placing a first
  // among S costs one backward pair per b in S preferred to a.
  const std::uint32_t full = (1U << n) - 1;
  std::vector<std::uint32_t> best(std::size_t{full} + 1, 0);
  for (std::uint32_t s = 1; s <= full; ++s) {
    std::uint32_t value = std::numeric_limits<std::uint32_t>::max();
    for (std::uint32_t rest = s; rest != 0; rest &= rest - 1) {
      const int a = std::countr_zero(rest);
      const std::uint32_t without = s & ~(1U << a);
      const auto c = static_cast<std::uint32_t>(std::popcount(beaten_by[a] & without)) +
                     best[without];
      value = std::min(value, c);
    }
    best[s] = value;
  }

  // Walk forward, always taking the smallest id that stays optimal.
  std::vector<std::size_t> by_id(n);
  std::iota(by_id.begin(), by_id.end(), std::size_t{0});
  std::sort(by_id.begin(), by_id.end(),
            [&](std::size_t a, std::size_t b) { return elements[a] < elements[b]; });
  std::vector<ElementId> order;
  order.reserve(n);
  std::uint32_t s = full;
  while (s != 0) {
    for (std::size_t a : by_id) {
      if ((s & (1U << a)) == 0) continue;
      const std::uint32_t without = s & ~(1U << a);
      if (static_cast<std::uint32_t>(std::popcount(beaten_by[a] & without)) +
              best[without] ==
          best[s]) {
        order.push_back(elements[a]);
        s = without;
        break;
      }
    }
  }
  return {Permutation(std::move(order)), best[full]};
}

RankedCost best_respecting(const OrderedDecomposition& d, const PreferenceOracle& w) {
  std::vector<ElementId> order;
  order.reserve(d.element_count());
  std::uint64_t cost = 0;
  for (const auto& block : d.blocks()) {
    const RankedCost local = brute_force_mfast(block, w);
    order.insert(order.end(), local.order.order().begin(), local.order.order().end());
    cost += local.cost;
  }
  cost += cross_block_cost(d, w);
  return {Permutation(std::move(order)), cost};
}

EpsGoodReport check_eps_good(const OrderedDecomposition& d, const PreferenceOracle& w,
                             double eps) {
  const std::size_t n = d.element_count();
  require_exact_size(n);
  EpsGoodReport report;
  // The restriction of one global order to V_i ranges over all of Pi(V_i)
  // independently of the other blocks, so the minimum of the summed big-block
  // costs is the sum of the per-block minima.
  std::uint64_t respecting = 0;
  std::uint64_t big_pairs = 0;
  for (const auto& block : d.blocks()) {
    const std::uint64_t block_opt = brute_force_mfast(block, w).cost;
    respecting += block_opt;
    if (n >= 3 && !is_small_block(block.size(), n)) {
      report.local_chaos_lhs += static_cast<double>(block_opt);
      big_pairs += pairs_of(block.size());
    }
  }
  report.local_chaos_rhs = eps * eps * static_cast<double>(big_pairs);
  report.respecting_opt = respecting + cross_block_cost(d, w);
  std::vector<ElementId> all;
  all.reserve(n);
  for (const auto& block : d.blocks()) all.insert(all.end(), block.begin(), block.end());
  report.global_opt = brute_force_mfast(all, w).cost;
  report.local_chaos = report.local_chaos_lhs >= report.local_chaos_rhs;
  report.approx_optimal = static_cast<double>(report.respecting_opt) <=
                          (1.0 + eps) * static_cast<double>(report.global_opt);
  return report;
}

}  // namespace activerank
