#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "activerank/decompose.hpp"
#include "activerank/metrics.hpp"
#include "activerank/quicksort.hpp"
#include "activerank/serialization.hpp"

namespace activerank {

namespace {

void check_eps(double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("eps must lie in (0, 1)");
}

struct Recursion {
  const QueryContext& ctx;
  double eps;
  std::size_t n;
  const DecomposeConfig& config;
  RandomSource& rng;
  std::vector<std::vector<ElementId>> blocks;
  Decomposition out;

  void emit(const Permutation& pi, BlockKind kind) {
    blocks.push_back(pi.order());
    out.kinds.push_back(kind);
    out.block_orders.push_back(pi);
  }

  void run(const Permutation& pi, std::size_t depth) {
    out.stats.max_depth = std::max(out.stats.max_depth, depth);
    const std::size_t size = pi.size();
    if (n < 3 || is_small_block(size, n)) {
      emit(pi, BlockKind::kSmall);
      return;
    }
    const double estimate = estimate_block_cost(pi, ctx, eps, n, config, rng);
    const double big = static_cast<double>(size);
    if (estimate >= config.c_chaos * eps * eps * big * big) {
      emit(pi, BlockKind::kChaos);
      return;
    }

    LocalImproveResult improved = local_improve(pi, ctx, eps, n, config, rng);
    auto& stats = out.stats;
    ++stats.local_improve_calls;
    if (!improved.skipped) ++stats.local_improve_runs;
    stats.moves += improved.moves;
    stats.guard_trips += improved.guard_tripped ? 1 : 0;
    stats.audited_moves += improved.audited_moves;
    stats.non_improving_moves += improved.non_improving_moves;
    stats.refresh += improved.refresh;

    // The split follows the improved order.
    const auto lo = static_cast<std::int64_t>((size + 2) / 3);
    const auto hi = static_cast<std::int64_t>(2 * size / 3);
    const std::int64_t k = std::clamp<std::int64_t>(
        rng.uniform_int(lo, std::max(lo, hi)), 1, static_cast<std::int64_t>(size) - 1);
    const auto& order = improved.order.order();
    const auto cut = order.begin() + k;
    run(Permutation(std::vector<ElementId>(order.begin(), cut)), depth + 1);
    run(Permutation(std::vector<ElementId>(cut, order.end())), depth + 1);
  }
};

}  // namespace

const char* to_string(BlockKind kind) {
  return kind == BlockKind::kSmall ? "small" : "chaos";
}

Permutation Decomposition::order() const {
  std::vector<ElementId> all;
  all.reserve(blocks.element_count());
  for (const auto& block : block_orders) {
    all.insert(all.end(), block.order().begin(), block.order().end());
  }
  return Permutation(std::move(all));
}

double estimate_block_cost(const Permutation& pi, const QueryContext& ctx, double eps,
                           std::size_t n, const DecomposeConfig& config,
                           RandomSource& rng, CostSampling sampling) {
  if (pi.size() < 2) throw std::invalid_argument("cost estimate needs two elements");
  if (n < 2) throw std::invalid_argument("cost estimate needs n >= 2");
  const CountingOracle w(ctx, phase::kChaosTest);
  if (sampling == CostSampling::kFull) return partial_cost(pi, all_pairs(pi.order()), w);
  const double ln_n = std::log(static_cast<double>(n));
  const auto draws = static_cast<std::size_t>(
      std::max(1.0, std::ceil(config.c_cost_sample * ln_n / std::pow(eps, 4.0))));
  return partial_cost(pi, sample_uniform_pairs(pi.order(), draws, rng), w);
}

Decomposition sample_and_rank(const Permutation& pi, const QueryContext& ctx,
                              double eps, std::size_t n, const DecomposeConfig& config,
                              RandomSource& rng) {
  check_eps(eps);
  config.validate();
  Recursion rec{ctx, eps, n, config, rng, {}, {}};
  if (!pi.empty()) rec.run(pi, 0);
  rec.out.blocks = OrderedDecomposition(std::move(rec.blocks));
  return std::move(rec.out);
}

Decomposition sample_and_rank_root(std::span<const ElementId> elements,
                                   const QueryContext& ctx, double eps,
                                   const DecomposeConfig& config, RandomSource& rng) {
  check_eps(eps);
  const Permutation initial = quicksort_rank(elements, ctx, rng);
  return sample_and_rank(initial, ctx, eps, elements.size(), config, rng);
}

void to_json(nlohmann::json& j, const Decomposition& d) {
  nlohmann::json flags = nlohmann::json::array();
  for (BlockKind kind : d.kinds) flags.push_back(to_string(kind));
  const auto& s = d.stats;
  j = {{"blocks", d.blocks},
       {"flags", flags},
       {"stats",
        {{"max_depth", s.max_depth},
         {"local_improve_calls", s.local_improve_calls},
         {"local_improve_runs", s.local_improve_runs},
         {"moves", s.moves},
         {"guard_trips", s.guard_trips},
         {"audited_moves", s.audited_moves},
         {"non_improving_moves", s.non_improving_moves},
         {"refresh_cells", s.refresh.interesting_cells},
         {"refresh_distance", s.refresh.distance}}}};
}

}  // namespace activerank
