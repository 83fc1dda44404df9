#include "activerank/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace activerank {

namespace {

void require_same_elements(const Permutation& pi, const Permutation& sigma) {
  if (pi.size() != sigma.size()) {
    throw std::invalid_argument("permutations have different sizes");
  }
  for (ElementId v : pi.order()) {
    if (!sigma.contains(v)) {
      throw std::invalid_argument("permutations range over different elements");
    }
  }
}

// Counts inversions of `seq` by merge sort; `seq` is left sorted.
std::uint64_t count_inversions(std::vector<Position>& seq) {
  std::vector<Position> buffer(seq.size());
  std::uint64_t inversions = 0;
  for (std::size_t width = 1; width < seq.size(); width *= 2) {
    for (std::size_t lo = 0; lo < seq.size(); lo += 2 * width) {
      const std::size_t mid = std::min(lo + width, seq.size());
      const std::size_t hi = std::min(lo + 2 * width, seq.size());
      std::size_t a = lo, b = mid, out = lo;
      while (a < mid && b < hi) {
        if (seq[b] < seq[a]) {
          inversions += mid - a;
          buffer[out++] = seq[b++];
        } else {
          buffer[out++] = seq[a++];
        }
      }
      while (a < mid) buffer[out++] = seq[a++];
      while (b < hi) buffer[out++] = seq[b++];
    }
    seq.swap(buffer);
  }
  return inversions;
}

// Backward indicator of one sampled pair under pi: 1 iff the later element
// of the pair is preferred to the earlier one.
bool backward(const Permutation& pi, const ElementPair& e, const PreferenceOracle& w) {
  const auto [a, b] = e;
  return pi.precedes(a, b) ? w.prefers(b, a) : w.prefers(a, b);
}

ElementPair draw_pair(std::span<const ElementId> elements, RandomSource& rng) {
  const std::size_t a = rng.index(elements.size());
  std::size_t b = rng.index(elements.size() - 1);
  if (b >= a) ++b;
  return {elements[a], elements[b]};
}

}  // namespace

std::size_t DecompositionSample::total_pairs() const {
  std::size_t total = 0;
  for (const auto& e : per_block) total += e.pairs.size();
  return total;
}

std::uint64_t mfast_cost(const Permutation& pi, const PreferenceOracle& w) {
  return restricted_cost(pi, pi.order(), w);
}

std::uint64_t restricted_cost(const Permutation& pi,
                              std::span<const ElementId> block,
                              const PreferenceOracle& w) {
  const Permutation local = pi.restricted_to(block);
  const auto& order = local.order();
  std::uint64_t cost = 0;
  for (std::size_t a = 0; a < order.size(); ++a) {
    for (std::size_t b = a + 1; b < order.size(); ++b) {
      cost += w.prefers(order[b], order[a]) ? 1 : 0;
    }
  }
  return cost;
}

double partial_cost(const Permutation& pi, const EdgeSample& e,
                    const PreferenceOracle& w) {
  if (e.pairs.empty()) throw std::invalid_argument("partial_cost on an empty sample");
  std::uint64_t backward_count = 0;
  for (const auto& pair : e.pairs) backward_count += backward(pi, pair, w) ? 1 : 0;
  return static_cast<double>(pairs_of(pi.size())) *
         static_cast<double>(backward_count) / static_cast<double>(e.pairs.size());
}

EdgeSample sample_uniform_pairs(std::span<const ElementId> elements,
                                std::size_t count, RandomSource& rng,
                                std::string universe) {
  if (elements.size() < 2) {
    throw std::invalid_argument("pair sampling needs at least two elements");
  }
  EdgeSample e{{}, std::move(universe)};
  e.pairs.reserve(count);
  for (std::size_t k = 0; k < count; ++k) e.pairs.push_back(draw_pair(elements, rng));
  return e;
}

EdgeSample all_pairs(std::span<const ElementId> elements, std::string universe) {
  EdgeSample e{{}, std::move(universe)};
  e.pairs.reserve(pairs_of(elements.size()));
  for (std::size_t a = 0; a < elements.size(); ++a) {
    for (std::size_t b = a + 1; b < elements.size(); ++b) {
      e.pairs.emplace_back(elements[a], elements[b]);
    }
  }
  return e;
}

DecompositionSample sample_decomposition(const OrderedDecomposition& d,
                                         std::size_t n, std::size_t count,
                                         RandomSource& rng) {
  DecompositionSample s;
  s.per_block.resize(d.block_count());
  std::vector<double> weights(d.block_count(), 0.0);
  for (std::size_t i = 0; i < d.block_count(); ++i) {
    s.per_block[i].universe = "block:" + std::to_string(i);
    const std::size_t size = d.block(i).size();
    if (n >= 3 && !is_small_block(size, n) && size >= 2) {
      s.big_blocks.push_back(i);
      weights[i] = static_cast<double>(pairs_of(size));
    }
  }
  if (s.big_blocks.empty()) {
    throw std::invalid_argument("decomposition has no big block to sample from");
  }
  std::discrete_distribution<std::size_t> pick_block(weights.begin(), weights.end());
  for (std::size_t k = 0; k < count; ++k) {
    const std::size_t i = pick_block(rng.engine());
    s.per_block[i].pairs.push_back(draw_pair(d.block(i), rng));
  }
  return s;
}

double decomp_partial_cost(const Permutation& pi, const OrderedDecomposition& d,
                           const DecompositionSample& s,
                           const PreferenceOracle& w) {
  if (s.big_blocks.empty()) {
    throw std::invalid_argument("decomposition sample has no big blocks");
  }
  const std::size_t total = s.total_pairs();
  if (total == 0) return 0.0;
  double big_pairs = 0.0;
  std::uint64_t backward_count = 0;
  for (std::size_t i : s.big_blocks) {
    big_pairs += static_cast<double>(pairs_of(d.block(i).size()));
    // C(n_i,2)^-1 |E_i| C_{E_i} reduces to the raw backward count of E_i.
    for (const auto& pair : s.per_block.at(i).pairs) {
      backward_count += backward(pi, pair, w) ? 1 : 0;
    }
  }
  return big_pairs * static_cast<double>(backward_count) / static_cast<double>(total);
}

double c_tilde(const Permutation& sigma, const OrderedDecomposition& d,
               const DecompositionSample& s, const PreferenceOracle& w,
               CrossTerm cross) {
  if (!respects(sigma, d)) {
    throw std::invalid_argument("c_tilde needs a permutation respecting the decomposition");
  }
  double value = s.big_blocks.empty() ? 0.0 : decomp_partial_cost(sigma, d, s, w);
  for (std::size_t i = 0; i < d.block_count(); ++i) {
    const auto& block = d.block(i);
    const bool big = std::find(s.big_blocks.begin(), s.big_blocks.end(), i) !=
                     s.big_blocks.end();
    if (!big) value += static_cast<double>(restricted_cost(sigma, block, w));
  }
  if (cross == CrossTerm::kVerify) {
    std::uint64_t violations = 0;
    for (std::size_t i = 0; i < d.block_count(); ++i) {
      for (std::size_t j = i + 1; j < d.block_count(); ++j) {
        for (ElementId u : d.block(i)) {
          for (ElementId v : d.block(j)) violations += w.prefers(v, u) ? 1 : 0;
        }
      }
    }
    value += static_cast<double>(violations);
  }
  return value;
}

std::uint64_t kendall_tau(const Permutation& pi, const Permutation& sigma) {
  require_same_elements(pi, sigma);
  std::vector<Position> seq;
  seq.reserve(pi.size());
  for (ElementId v : pi.order()) seq.push_back(sigma.rank_of(v));
  return count_inversions(seq);
}

std::uint64_t footrule(const Permutation& pi, const Permutation& sigma) {
  require_same_elements(pi, sigma);
  std::uint64_t total = 0;
  for (ElementId v : pi.order()) {
    const Position a = pi.rank_of(v);
    const Position b = sigma.rank_of(v);
    total += a > b ? a - b : b - a;
  }
  return total;
}

std::int64_t test_move_exact(const Permutation& pi, const PreferenceOracle& w,
                             ElementId v, Position i) {
  const Position r = pi.rank_of(v);
  if (i == 0 || i > pi.size()) throw std::out_of_range("move target outside [1, n]");
  std::int64_t delta = 0;
  if (i >= r) {
    for (Position p = r + 1; p <= i; ++p) {
      const ElementId u = pi.at(p);
      delta += w.prefers(u, v) ? 1 : -1;
    }
  } else {
    for (Position p = i; p < r; ++p) {
      const ElementId u = pi.at(p);
      delta += w.prefers(v, u) ? 1 : -1;
    }
  }
  return delta;
}

double test_move_sampled(const Permutation& pi, const PreferenceOracle& w,
                         ElementId v, Position i, const EdgeSample& e) {
  const Position r = pi.rank_of(v);
  if (i == 0 || i > pi.size()) throw std::out_of_range("move target outside [1, n]");
  const Position lo = i >= r ? r + 1 : i;
  const Position hi = i >= r ? i : r - 1;
  std::int64_t sum = 0;
  std::size_t hits = 0;
  for (const auto& [a, b] : e.pairs) {
    if (a != v && b != v) continue;
    const ElementId u = a == v ? b : a;
    if (u == v || !pi.contains(u)) continue;
    const Position ru = pi.rank_of(u);
    if (ru < lo || ru > hi) continue;
    ++hits;
    const bool improves = i >= r ? w.prefers(u, v) : w.prefers(v, u);
    sum += improves ? 1 : -1;
  }
  if (hits == 0) {
    throw std::invalid_argument("sample has no pair inside the move interval");
  }
  const double distance = static_cast<double>(i >= r ? i - r : r - i);
  return distance * static_cast<double>(sum) / static_cast<double>(hits);
}

}  // namespace activerank
