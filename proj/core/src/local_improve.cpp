#include <cmath>

#include "activerank/decompose.hpp"
#include "activerank/metrics.hpp"

namespace activerank {

LocalImproveResult local_improve(const Permutation& pi, const QueryContext& ctx,
                                 double eps, std::size_t n,
                                 const DecomposeConfig& config, RandomSource& rng) {
  LocalImproveResult result;
  result.order = pi;
  const std::size_t size = pi.size();
  const double ln_n = std::log(static_cast<double>(n));
  if (n < 3 || size < 2 ||
      static_cast<double>(size) <= config.c_small * std::pow(ln_n / eps, 3.0)) {
    result.skipped = true;
    return result;
  }

  // Local id k is the element at position k + 1 of the input order.
  const EnsembleShape shape = EnsembleShape::make(size, n, eps, config);
  LocalLabels labels(pi.order(), ctx, phase::kEnsemble);
  Permutation local = Permutation::identity(size);
  SampleEnsemble ensemble = build_ensemble(local, shape, rng);

  const auto guard = static_cast<std::size_t>(
      std::ceil(config.c_guard * static_cast<double>(size) * ln_n * ln_n / (eps * eps)));
  while (true) {
    const auto move = find_improving_move(ensemble, local, labels, config.success_fraction);
    if (!move) break;
    if (result.moves == guard) {
      result.guard_tripped = true;
      break;
    }
    if (config.audit_moves) {
      std::vector<ElementId> current;
      current.reserve(size);
      for (ElementId k : local.order()) current.push_back(labels.global_id(k));
      const Permutation global(std::move(current));
      const std::int64_t exact = test_move_exact(
          global, ctx.oracle(), labels.global_id(move->element), move->target);
      ++result.audited_moves;
      if (exact <= 0) ++result.non_improving_moves;
    }
    result.refresh += refresh_ensemble(ensemble, local, move->element, move->target, rng);
    local.move_to(move->element, move->target);
    ++result.moves;
  }

  std::vector<ElementId> order;
  order.reserve(size);
  for (ElementId k : local.order()) order.push_back(labels.global_id(k));
  result.order = Permutation(std::move(order));
  return result;
}

}  // namespace activerank
