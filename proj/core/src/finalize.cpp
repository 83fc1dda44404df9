#include "activerank/finalize.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <unordered_map>
#include <vector>

#include "activerank/exact.hpp"

namespace activerank {

namespace {

struct Neighbor {
  std::size_t other;    // local index
  std::uint64_t weight;
  bool self_first;      // the arc wants this element before `other`
};

}  // namespace

Permutation insertion_search(const Permutation& start, std::span<const WeightedArc> arcs,
                             std::size_t max_passes) {
  const std::size_t size = start.size();
  if (size < 2) return start;
  std::unordered_map<ElementId, std::size_t> local;
  for (std::size_t k = 0; k < size; ++k) local.emplace(start.order()[k], k);
  std::vector<std::vector<Neighbor>> adj(size);
  for (const auto& arc : arcs) {
    const std::size_t a = local.at(arc.before);
    const std::size_t b = local.at(arc.after);
    adj[a].push_back({b, arc.weight, true});
    adj[b].push_back({a, arc.weight, false});
  }

  std::vector<std::size_t> order(size);  // position -> local index
  std::vector<std::size_t> pos(size);
  for (std::size_t k = 0; k < size; ++k) order[k] = pos[k] = k;
  std::vector<std::pair<std::size_t, const Neighbor*>> around;

  for (std::size_t pass = 0; pass < max_passes; ++pass) {
    bool moved = false;
    for (std::size_t x = 0; x < size; ++x) {
      if (adj[x].empty()) continue;
      // Slot s puts x before the element at index s of the order without x.
      around.clear();
      const std::size_t current = pos[x];
      std::int64_t cost = 0;  // slot 0
      std::int64_t current_cost = 0;
      for (const auto& nb : adj[x]) {
        const std::size_t p = pos[nb.other] > current ? pos[nb.other] - 1 : pos[nb.other];
        around.emplace_back(p, &nb);
        const auto w = static_cast<std::int64_t>(nb.weight);
        if (!nb.self_first) cost += w;
        if ((p < current) == nb.self_first) current_cost += w;
      }
      std::sort(around.begin(), around.end(),
                [](const auto& l, const auto& r) { return l.first < r.first; });
      std::int64_t best_cost = cost;
      std::size_t best_slot = 0;
      for (std::size_t k = 0; k < around.size();) {
        const std::size_t p = around[k].first;
        for (; k < around.size() && around[k].first == p; ++k) {
          const auto w = static_cast<std::int64_t>(around[k].second->weight);
          cost += around[k].second->self_first ? w : -w;
        }
        if (cost < best_cost) {
          best_cost = cost;
          best_slot = p + 1;
        }
      }
      if (best_cost >= current_cost) continue;
      order.erase(order.begin() + static_cast<std::ptrdiff_t>(current));
      order.insert(order.begin() + static_cast<std::ptrdiff_t>(best_slot), x);
      for (std::size_t p = std::min(current, best_slot); p <= std::max(current, best_slot); ++p) {
        pos[order[p]] = p;
      }
      moved = true;
    }
    if (!moved) break;
  }

  std::vector<ElementId> result;
  result.reserve(size);
  for (std::size_t k : order) result.push_back(start.order()[k]);
  return Permutation(std::move(result));
}

FinalRanking finalize_ranking(const Decomposition& d, const QueryContext& ctx,
                              double eps, const DecomposeConfig& config,
                              RandomSource& rng) {
  const std::size_t n = d.blocks.element_count();
  std::vector<Permutation> parts = d.block_orders;
  FinalRanking result;

  std::vector<std::size_t> big;
  for (std::size_t i = 0; i < d.blocks.block_count(); ++i) {
    const auto& block = d.blocks.block(i);
    if (d.kinds[i] == BlockKind::kSmall) {
      if (block.size() < 2) continue;
      const CountingOracle w(ctx, phase::kSmallBlock);
      if (block.size() <= kExactLimit) {
        parts[i] = brute_force_mfast(block, w).order;
      } else {
        std::vector<WeightedArc> arcs;
        for (std::size_t a = 0; a < block.size(); ++a) {
          for (std::size_t b = a + 1; b < block.size(); ++b) {
            const bool forward = w.prefers(block[a], block[b]);
            arcs.push_back({forward ? block[a] : block[b], forward ? block[b] : block[a], 1});
          }
        }
        parts[i] = insertion_search(parts[i], arcs);
      }
    } else {
      big.push_back(i);
    }
  }

  if (config.c_final > 0.0 && !big.empty() && n >= 3) {
    const double ln_n = std::log(static_cast<double>(n));
    const auto draws = static_cast<std::uint64_t>(
        std::ceil(config.c_final * static_cast<double>(n) * ln_n / std::pow(eps, 6.0)));
    result.block_sample_draws = draws;
    std::vector<double> weights;
    for (std::size_t i : big) {
      weights.push_back(static_cast<double>(pairs_of(d.blocks.block(i).size())));
    }
    std::discrete_distribution<std::size_t> pick(weights.begin(), weights.end());
    std::vector<std::unordered_map<std::uint64_t, std::uint64_t>> counts(big.size());
    for (std::uint64_t t = 0; t < draws; ++t) {
      const std::size_t slot = pick(rng.engine());
      const auto& block = d.blocks.block(big[slot]);
      const std::size_t a = rng.index(block.size());
      std::size_t b = rng.index(block.size() - 1);
      if (b >= a) ++b;
      const ElementId lo = std::min(block[a], block[b]);
      const ElementId hi = std::max(block[a], block[b]);
      ++counts[slot][(std::uint64_t{lo} << 32) | hi];
    }
    const CountingOracle w(ctx, phase::kBlockSample);
    for (std::size_t slot = 0; slot < big.size(); ++slot) {
      std::vector<std::pair<std::uint64_t, std::uint64_t>> sampled(counts[slot].begin(),
                                                                   counts[slot].end());
      std::sort(sampled.begin(), sampled.end());
      std::vector<WeightedArc> arcs;
      arcs.reserve(sampled.size());
      for (const auto& [key, count] : sampled) {
        const auto lo = static_cast<ElementId>(key >> 32);
        const auto hi = static_cast<ElementId>(key & 0xffffffffU);
        const bool forward = w.prefers(lo, hi);
        arcs.push_back({forward ? lo : hi, forward ? hi : lo, count});
      }
      parts[big[slot]] = insertion_search(parts[big[slot]], arcs);
    }
  }

  std::vector<ElementId> order;
  order.reserve(n);
  for (const auto& part : parts) order.insert(order.end(), part.order().begin(), part.order().end());
  result.order = Permutation(std::move(order));
  return result;
}

}  // namespace activerank
