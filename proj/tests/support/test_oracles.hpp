#pragma once

// Independent reference implementations used to check the library. They are
// deliberately naive and share no code with the library beyond its types.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

#include "activerank/query.hpp"
#include "activerank/types.hpp"

namespace testing_oracles {

using activerank::ElementId;
using activerank::PreferenceOracle;

/// Matrix tournament filled by coin flips; W[u][v] = 1 iff u beats v.
class Matrix final : public PreferenceOracle {
 public:
  explicit Matrix(std::size_t n) : w_(n, std::vector<char>(n, 0)) {}

  static Matrix coin_flips(std::size_t n, std::mt19937_64& gen) {
    Matrix m(n);
    std::bernoulli_distribution coin(0.5);
    for (std::size_t u = 0; u < n; ++u) {
      for (std::size_t v = u + 1; v < n; ++v) m.set(u, v, coin(gen));
    }
    return m;
  }

  static Matrix from_sequence(const std::vector<ElementId>& best_first) {
    Matrix m(best_first.size());
    for (std::size_t a = 0; a < best_first.size(); ++a) {
      for (std::size_t b = a + 1; b < best_first.size(); ++b) {
        m.set(best_first[a], best_first[b], true);
      }
    }
    return m;
  }

  void set(std::size_t u, std::size_t v, bool u_wins) {
    w_[u][v] = u_wins ? 1 : 0;
    w_[v][u] = u_wins ? 0 : 1;
  }

  std::size_t size() const override { return w_.size(); }
  bool prefers(ElementId u, ElementId v) const override { return w_[u][v] != 0; }

 private:
  std::vector<std::vector<char>> w_;
};

/// Number of index pairs a < b with seq[b] preferred to seq[a].
inline std::uint64_t backward_pairs(const std::vector<ElementId>& seq,
                                    const PreferenceOracle& w) {
  std::uint64_t c = 0;
  for (std::size_t a = 0; a < seq.size(); ++a) {
    for (std::size_t b = a + 1; b < seq.size(); ++b) c += w.prefers(seq[b], seq[a]);
  }
  return c;
}

/// Minimum backward cost over all orderings of `elements`, by enumeration.
inline std::uint64_t enumerate_optimum(std::vector<ElementId> elements,
                                       const PreferenceOracle& w) {
  std::sort(elements.begin(), elements.end());
  std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
  do {
    best = std::min(best, backward_pairs(elements, w));
  } while (std::next_permutation(elements.begin(), elements.end()));
  return best;
}

inline std::vector<ElementId> iota_ids(std::size_t n) {
  std::vector<ElementId> v(n);
  std::iota(v.begin(), v.end(), ElementId{0});
  return v;
}

inline std::vector<ElementId> shuffled_ids(std::size_t n, std::mt19937_64& gen) {
  auto v = iota_ids(n);
  std::shuffle(v.begin(), v.end(), gen);
  return v;
}

/// Sequence with the element at index `from` reinserted at index `to`.
inline std::vector<ElementId> reinsert(std::vector<ElementId> seq, std::size_t from,
                                       std::size_t to) {
  const ElementId x = seq[from];
  seq.erase(seq.begin() + static_cast<std::ptrdiff_t>(from));
  seq.insert(seq.begin() + static_cast<std::ptrdiff_t>(to), x);
  return seq;
}

inline std::uint64_t discordant_pairs(const std::vector<ElementId>& a,
                                      const std::vector<ElementId>& b) {
  std::vector<std::size_t> pos_a(a.size()), pos_b(b.size());
  for (std::size_t i = 0; i < a.size(); ++i) pos_a[a[i]] = i;
  for (std::size_t i = 0; i < b.size(); ++i) pos_b[b[i]] = i;
  std::uint64_t d = 0;
  for (ElementId u = 0; u < a.size(); ++u) {
    for (ElementId v = u + 1; v < a.size(); ++v) {
      d += (pos_a[u] < pos_a[v]) != (pos_b[u] < pos_b[v]);
    }
  }
  return d;
}

inline std::uint64_t displacement(const std::vector<ElementId>& a,
                                  const std::vector<ElementId>& b) {
  std::vector<std::int64_t> pos_b(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) pos_b[b[i]] = static_cast<std::int64_t>(i);
  std::uint64_t d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    d += static_cast<std::uint64_t>(std::llabs(static_cast<std::int64_t>(i) - pos_b[a[i]]));
  }
  return d;
}

/// Running mean and standard error.
struct MeanAccumulator {
  std::size_t count = 0;
  double mean = 0, m2 = 0;

  void add(double x) {
    ++count;
    const double delta = x - mean;
    mean += delta / static_cast<double>(count);
    m2 += delta * (x - mean);
  }
  double standard_error() const {
    if (count < 2) return std::numeric_limits<double>::infinity();
    return std::sqrt(m2 / static_cast<double>(count - 1) / static_cast<double>(count));
  }
};

}  // namespace testing_oracles
