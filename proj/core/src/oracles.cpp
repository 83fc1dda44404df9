#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

#include "activerank/oracles.hpp"

namespace activerank {

Tournament::Tournament(std::size_t n) : n_(n) {
  if (n > kMaxDenseSize) {
    throw std::invalid_argument("dense tournament limited to " +
                                std::to_string(kMaxDenseSize) + " elements");
  }
  bits_.assign(pairs_of(n), true);
}

Tournament Tournament::from_order(const Permutation& order) {
  Tournament t(order.size());
  for (ElementId u = 0; u < t.n_; ++u) {
    for (ElementId v = u + 1; v < t.n_; ++v) {
      t.bits_[t.index(u, v)] = order.precedes(u, v);
    }
  }
  return t;
}

Tournament Tournament::random(std::size_t n, RandomSource& rng) {
  Tournament t(n);
  for (std::size_t k = 0; k < t.bits_.size(); ++k) {
    t.bits_[k] = (rng.engine()() & 1U) != 0;
  }
  return t;
}

Tournament Tournament::from_oracle(const PreferenceOracle& oracle) {
  Tournament t(oracle.size());
  for (ElementId u = 0; u < t.n_; ++u) {
    for (ElementId v = u + 1; v < t.n_; ++v) {
      t.bits_[t.index(u, v)] = oracle.prefers(u, v);
    }
  }
  return t;
}

bool Tournament::prefers(ElementId u, ElementId v) const {
  if (u >= n_ || v >= n_ || u == v) {
    throw std::out_of_range("tournament query (" + std::to_string(u) + ", " +
                            std::to_string(v) + ") invalid for n=" +
                            std::to_string(n_));
  }
  return u < v ? bits_[index(u, v)] : !bits_[index(v, u)];
}

void Tournament::set(ElementId u, ElementId v, bool u_preferred) {
  if (u >= n_ || v >= n_ || u == v) {
    throw std::out_of_range("tournament pair (" + std::to_string(u) + ", " +
                            std::to_string(v) + ") invalid for n=" +
                            std::to_string(n_));
  }
  if (u < v) {
    bits_[index(u, v)] = u_preferred;
  } else {
    bits_[index(v, u)] = !u_preferred;
  }
}

PlantedModel::PlantedModel(std::size_t n, double p, std::uint64_t seed)
    : p_(p), seed_(seed) {
  if (!(p >= 0.0 && p < 0.5)) {
    throw std::invalid_argument("planted flip probability must lie in [0, 0.5)");
  }
  std::vector<ElementId> order(n);
  std::iota(order.begin(), order.end(), ElementId{0});
  RandomSource rng(seed);
  std::shuffle(order.begin(), order.end(), rng.engine());
  sigma_star_ = Permutation(std::move(order));
}

bool PlantedModel::flipped(ElementId u, ElementId v) const {
  const ElementId lo = std::min(u, v);
  const ElementId hi = std::max(u, v);
  const std::uint64_t h = RandomSource::mix(
      RandomSource::mix(seed_ ^ 0x5bd1e995ULL) ^ ((std::uint64_t{lo} << 32) | hi));
  // 53 high-quality bits -> uniform double in [0, 1).
  const double uniform = static_cast<double>(h >> 11) * 0x1.0p-53;
  return uniform < p_;
}

bool PlantedModel::prefers(ElementId u, ElementId v) const {
  if (u == v) throw std::invalid_argument("planted query on identical elements");
  return sigma_star_.precedes(u, v) != flipped(u, v);
}

Tournament make_planted(std::size_t n, double p, std::uint64_t seed) {
  return PlantedModel(n, p, seed).materialize();
}

}  // namespace activerank
