#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "activerank/query.hpp"
#include "activerank/random.hpp"
#include "activerank/types.hpp"

namespace activerank {

/// Dense antisymmetric preference matrix over elements 0..n-1.
///
/// Only W(u, v) for u < v is stored (one bit per unordered pair); the other
/// orientation is derived, so antisymmetry holds by construction.
class Tournament final : public PreferenceOracle {
 public:
  static constexpr std::size_t kMaxDenseSize = 20000;

  /// The tournament consistent with the identity order (W(u,v)=1 iff u<v).
  /// Throws std::invalid_argument above kMaxDenseSize.
  explicit Tournament(std::size_t n);

  /// The transitive tournament consistent with `order`.
  static Tournament from_order(const Permutation& order);
  /// Every pair oriented by an independent fair coin.
  static Tournament random(std::size_t n, RandomSource& rng);
  /// Materializes every pair of another oracle (no ledger charges).
  static Tournament from_oracle(const PreferenceOracle& oracle);

  std::size_t size() const override { return n_; }
  bool prefers(ElementId u, ElementId v) const override;

  /// Sets W(u, v) = u_preferred (and W(v, u) = !u_preferred).
  void set(ElementId u, ElementId v, bool u_preferred);

  friend bool operator==(const Tournament& a, const Tournament& b) {
    return a.n_ == b.n_ && a.bits_ == b.bits_;
  }

 private:
  std::size_t index(ElementId lo, ElementId hi) const {
    return std::size_t{lo} * (2 * n_ - lo - 1) / 2 + (hi - lo - 1);
  }

  std::size_t n_;
  std::vector<bool> bits_;  // W(lo, hi) for lo < hi
};

/// Planted-noise model: a hidden order sigma_star, with each pair's label
/// flipped independently with probability p. Answers are computed lazily from
/// (seed, pair) hashing, so arbitrarily large instances need no storage.
class PlantedModel final : public PreferenceOracle {
 public:
  /// Throws std::invalid_argument unless 0 <= p < 0.5.
  PlantedModel(std::size_t n, double p, std::uint64_t seed);

  std::size_t size() const override { return sigma_star_.size(); }
  bool prefers(ElementId u, ElementId v) const override;

  const Permutation& sigma_star() const { return sigma_star_; }
  double flip_probability() const { return p_; }
  std::uint64_t seed() const { return seed_; }

  /// True iff the label of {u, v} disagrees with sigma_star.
  bool flipped(ElementId u, ElementId v) const;

  Tournament materialize() const { return Tournament::from_oracle(*this); }

 private:
  double p_;
  std::uint64_t seed_;
  Permutation sigma_star_;
};

/// Materialized planted tournament; identical seeds give identical output.
Tournament make_planted(std::size_t n, double p, std::uint64_t seed);

/// Tournament file I/O.
///
/// Text format: a header line `n=<int>` followed by `u v w` rows with
/// w in {0, 1} meaning W(u, v) = w. Only u < v rows are required; if both
/// orientations appear they must be antisymmetric. Blank lines and lines
/// starting with '#' are ignored. Files ending in `.json` use
/// {"n": <int>, "edges": [[u, v, w], ...]} with the same rules.
/// All readers throw std::runtime_error on malformed input.
Tournament read_tournament(std::istream& in);
Tournament read_tournament_json(std::istream& in);
void write_tournament(std::ostream& out, const Tournament& t);
void write_tournament_json(std::ostream& out, const Tournament& t);

Tournament load_tournament(const std::filesystem::path& path);
void store_tournament(const std::filesystem::path& path, const Tournament& t);

}  // namespace activerank
