#include "activerank/ensemble.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

namespace activerank {

namespace {

// Dense label caches above this block size would dominate memory; larger
// blocks fall back to the ledger's own cache.
constexpr std::size_t kDenseLabelLimit = 8192;

int ceil_log2(std::uint64_t x) {
  return x <= 1 ? 0 : static_cast<int>(std::bit_width(x - 1));
}

std::uint64_t multiset_difference(std::vector<SampleEnsemble::Entry> a,
                                  std::vector<SampleEnsemble::Entry> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::size_t i = 0, k = 0;
  std::uint64_t common = 0;
  while (i < a.size() && k < b.size()) {
    if (a[i] < b[k]) {
      ++i;
    } else if (b[k] < a[i]) {
      ++k;
    } else {
      ++common;
      ++i;
      ++k;
    }
  }
  return a.size() + b.size() - 2 * common;
}

struct Hit {
  std::int64_t distance;
  double estimate;
};

struct Partner {
  std::int64_t distance;
  int value;  // +1 if passing this partner lowers the cost, else -1
};

}  // namespace

EnsembleShape EnsembleShape::make(std::size_t block_size, std::size_t root_size,
                                  double eps, const DecomposeConfig& config) {
  if (root_size < 3) throw std::invalid_argument("ensemble needs a root size of at least 3");
  if (block_size < 2 || block_size > root_size) {
    throw std::invalid_argument("ensemble block size must lie in [2, n]");
  }
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("eps must lie in (0, 1)");
  const double ln_n = std::log(static_cast<double>(root_size));
  EnsembleShape shape;
  shape.block_size = block_size;
  shape.root_size = root_size;
  shape.eps = eps;
  shape.high_scale = ceil_log2(block_size);
  const double low = std::ceil(
      std::log2(config.c_threshold * eps * static_cast<double>(block_size) / ln_n));
  shape.low_scale = std::clamp(static_cast<int>(std::max(0.0, low)), 0, shape.high_scale);
  shape.cell_size =
      static_cast<std::size_t>(std::ceil(config.c_ens * ln_n * ln_n / (eps * eps)));
  return shape;
}

LocalLabels::LocalLabels(std::span<const ElementId> ids, const QueryContext& ctx,
                         std::string_view phase)
    : ids_(ids.begin(), ids.end()), ctx_(ctx), phase_(phase) {
  if (ids_.size() <= kDenseLabelLimit) cache_.assign(ids_.size() * ids_.size(), -1);
}

bool LocalLabels::prefers(ElementId a, ElementId b) {
  if (cache_.empty()) return ctx_.prefers(ids_[a], ids_[b], phase_);
  std::int8_t& slot = cache_[std::size_t{a} * ids_.size() + b];
  if (slot < 0) {
    const bool w = ctx_.prefers(ids_[a], ids_[b], phase_);
    slot = w ? 1 : 0;
    cache_[std::size_t{b} * ids_.size() + a] = w ? 0 : 1;
  }
  return slot == 1;
}

SampleEnsemble::SampleEnsemble(const EnsembleShape& shape)
    : shape_(shape),
      entries_(shape.block_size * static_cast<std::size_t>(shape.scale_count()) *
                   shape.cell_size,
               0) {}

std::size_t SampleEnsemble::offset(ElementId v, int scale) const {
  if (v >= shape_.block_size || scale < shape_.low_scale || scale > shape_.high_scale) {
    throw std::out_of_range("ensemble cell (" + std::to_string(v) + ", " +
                            std::to_string(scale) + ") does not exist");
  }
  return (std::size_t{v} * static_cast<std::size_t>(shape_.scale_count()) +
          static_cast<std::size_t>(scale - shape_.low_scale)) *
         shape_.cell_size;
}

std::span<const SampleEnsemble::Entry> SampleEnsemble::cell(ElementId v, int scale) const {
  return {entries_.data() + offset(v, scale), shape_.cell_size};
}

std::span<SampleEnsemble::Entry> SampleEnsemble::cell(ElementId v, int scale) {
  return {entries_.data() + offset(v, scale), shape_.cell_size};
}

void SampleEnsemble::redraw(ElementId v, const Permutation& pi, RandomSource& rng) {
  const auto n = static_cast<std::int64_t>(shape_.block_size);
  const auto r = static_cast<std::int64_t>(pi.rank_of(v));
  for (int i = shape_.low_scale; i <= shape_.high_scale; ++i) {
    const std::int64_t radius = std::int64_t{1} << i;
    std::uniform_int_distribution<std::int64_t> window(r - radius, r + radius);
    for (Entry& e : cell(v, i)) {
      const std::int64_t q = window(rng.engine());
      e = q >= 1 && q <= n ? static_cast<Entry>(pi.at(static_cast<Position>(q)))
                           : static_cast<Entry>(q - 1);
    }
  }
}

SampleEnsemble build_ensemble(const Permutation& pi, const EnsembleShape& shape,
                              RandomSource& rng) {
  if (pi.size() != shape.block_size) {
    throw std::invalid_argument("permutation size does not match the ensemble shape");
  }
  SampleEnsemble s(shape);
  for (ElementId v = 0; v < shape.block_size; ++v) s.redraw(v, pi, rng);
  return s;
}

std::optional<Move> find_improving_move(const SampleEnsemble& s, const Permutation& pi,
                                        LocalLabels& labels, double success_fraction) {
  const EnsembleShape& shape = s.shape();
  const auto n = static_cast<std::int64_t>(shape.block_size);
  // TestMove_E = d * sum / |E~| against eps * d / ln n: the distance cancels,
  // so a target passes iff the mean label of the covered entries beats
  // eps / ln n.
  const double threshold = shape.eps / std::log(static_cast<double>(shape.root_size));
  const double needed = success_fraction * static_cast<double>(shape.cell_size);
  std::vector<Partner> partners;

  for (Position rank = 1; rank <= shape.block_size; ++rank) {
    const ElementId u = pi.at(rank);
    const auto r = static_cast<std::int64_t>(rank);
    for (int l = shape.low_scale; l <= shape.high_scale; ++l) {
      const std::int64_t band_hi = std::int64_t{1} << l;
      const std::int64_t band_lo = l == 0 ? 1 : (std::int64_t{1} << (l - 1)) + 1;
      const auto cell = s.cell(u, l);

      const auto scan = [&](int dir) -> std::optional<Hit> {
        const std::int64_t reach = std::min(band_hi, dir > 0 ? n - r : r - 1);
        if (reach < band_lo) return std::nullopt;
        partners.clear();
        for (auto e : cell) {
          const std::int64_t d = (s.partner_position(e, pi) - r) * dir;
          if (d < 1 || d > reach) continue;
          const auto x = static_cast<ElementId>(e);
          const bool gain = dir > 0 ? labels.prefers(x, u) : labels.prefers(u, x);
          partners.push_back({d, gain ? 1 : -1});
        }
        std::sort(partners.begin(), partners.end(),
                  [](const Partner& a, const Partner& b) { return a.distance < b.distance; });
        std::int64_t count = 0, sum = 0;
        std::size_t k = 0;
        const auto passes = [&] {
          return count > 0 && static_cast<double>(count) >= needed &&
                 static_cast<double>(sum) > threshold * static_cast<double>(count);
        };
        while (k < partners.size() && partners[k].distance <= band_lo) {
          ++count;
          sum += partners[k++].value;
        }
        if (passes()) {
          return Hit{band_lo, static_cast<double>(band_lo * sum) / static_cast<double>(count)};
        }
        while (k < partners.size()) {
          const std::int64_t d = partners[k].distance;
          while (k < partners.size() && partners[k].distance == d) {
            ++count;
            sum += partners[k++].value;
          }
          if (passes()) {
            return Hit{d, static_cast<double>(d * sum) / static_cast<double>(count)};
          }
        }
        return std::nullopt;
      };

      const auto left = scan(-1);
      const auto right = scan(+1);
      if (left && (!right || left->distance <= right->distance)) {
        return Move{u, static_cast<Position>(r - left->distance), left->estimate};
      }
      if (right) return Move{u, static_cast<Position>(r + right->distance), right->estimate};
    }
  }
  return std::nullopt;
}

RefreshStats refresh_ensemble(SampleEnsemble& s, const Permutation& pi, ElementId u,
                              Position j, RandomSource& rng) {
  using Entry = SampleEnsemble::Entry;
  const EnsembleShape& shape = s.shape();
  const auto n = static_cast<std::int64_t>(shape.block_size);
  if (j < 1 || j > shape.block_size) throw std::out_of_range("move target outside [1, N]");
  const auto a = static_cast<std::int64_t>(pi.rank_of(u));
  const auto b = static_cast<std::int64_t>(j);
  const Permutation next = perm_move(pi, u, j);
  RefreshStats stats;

  const auto entry_at = [&](std::int64_t q) -> Entry {
    return q >= 1 && q <= n ? static_cast<Entry>(pi.at(static_cast<Position>(q)))
                            : static_cast<Entry>(q - 1);
  };

  if (a != b) {
    const std::int64_t lo = std::min(a, b);
    const std::int64_t hi = std::max(a, b);
    std::vector<std::uint32_t> seen(shape.block_size + 1, 0);
    std::uint32_t stamp = 0;
    std::vector<std::pair<std::int64_t, std::int64_t>> ranges;

    for (int i = shape.low_scale; i <= shape.high_scale; ++i) {
      const std::int64_t radius = std::int64_t{1} << i;
      // Positions of every v whose window contents can change: v among the
      // shifted elements, v with a shifted element on its window boundary,
      // and v whose window gains or loses u itself.
      ranges = {{lo - 1, hi + 1},
                {lo - radius - 2, hi - radius + 2},
                {lo + radius - 2, hi + radius + 2}};
      if (hi - lo > 2 * radius) {
        ranges.emplace_back(a - radius, a + radius);
        ranges.emplace_back(b - radius, b + radius);
      } else {
        ranges.emplace_back(lo - radius, hi - radius - 1);
        ranges.emplace_back(lo + radius + 1, hi + radius);
      }
      ++stamp;
      for (const auto& [from, to] : ranges) {
        for (std::int64_t p = std::max<std::int64_t>(from, 1); p <= std::min(to, n); ++p) {
          if (seen[static_cast<std::size_t>(p)] == stamp) continue;
          seen[static_cast<std::size_t>(p)] = stamp;
          const ElementId v = pi.at(static_cast<Position>(p));
          if (v == u) continue;
          const auto p_new = static_cast<std::int64_t>(next.rank_of(v));

          // Only partners sitting on or just outside the old window boundary
          // (or u itself) can change membership.
          Entry candidates[5] = {entry_at(p - radius - 1), entry_at(p - radius),
                                 entry_at(p + radius), entry_at(p + radius + 1),
                                 static_cast<Entry>(u)};
          std::vector<Entry> lost, gained;
          for (int c = 0; c < 5; ++c) {
            const Entry x = candidates[c];
            if (std::find(candidates, candidates + c, x) != candidates + c) continue;
            const bool before = std::abs(s.partner_position(x, pi) - p) <= radius;
            const bool after = std::abs(s.partner_position(x, next) - p_new) <= radius;
            if (before && !after) lost.push_back(x);
            if (!before && after) gained.push_back(x);
          }
          if (lost.empty() && gained.empty()) continue;
          if (lost.size() != gained.size()) {
            throw std::logic_error("padded windows must keep their size");
          }
          ++stats.interesting_cells;
          std::sort(lost.begin(), lost.end(), [&](Entry x, Entry y) {
            return s.partner_position(x, pi) < s.partner_position(y, pi);
          });
          std::sort(gained.begin(), gained.end(), [&](Entry x, Entry y) {
            return s.partner_position(x, next) < s.partner_position(y, next);
          });
          for (Entry& e : s.cell(v, i)) {
            const auto it = std::find(lost.begin(), lost.end(), e);
            if (it == lost.end()) continue;
            e = gained[static_cast<std::size_t>(it - lost.begin())];
            stats.distance += 2;
          }
        }
      }
    }
  }

  std::vector<std::vector<Entry>> before;
  for (int i = shape.low_scale; i <= shape.high_scale; ++i) {
    const auto cell = s.cell(u, i);
    before.emplace_back(cell.begin(), cell.end());
  }
  s.redraw(u, next, rng);
  for (int i = shape.low_scale; i <= shape.high_scale; ++i) {
    const auto cell = s.cell(u, i);
    stats.distance += multiset_difference(before[static_cast<std::size_t>(i - shape.low_scale)],
                                          {cell.begin(), cell.end()});
  }
  return stats;
}

}  // namespace activerank
