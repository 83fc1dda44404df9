#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "activerank/config.hpp"
#include "activerank/query.hpp"
#include "activerank/random.hpp"
#include "activerank/types.hpp"

namespace activerank {

// LocalImprove works on a block of N elements renamed to local ids 0..N-1.
// Positions outside [1, N] are occupied by sentinel partners whose labels
// against every element are 0 and whose positions never change.

/// Shape of a sample ensemble for a block of size N inside a root instance of
/// size n.
struct EnsembleShape {
  std::size_t block_size = 0;  // N
  std::size_t root_size = 0;   // n
  double eps = 0;
  int low_scale = 0;           // B
  int high_scale = 0;          // L = ceil(log2 N)
  std::size_t cell_size = 0;   // m

  int scale_count() const { return high_scale - low_scale + 1; }

  static EnsembleShape make(std::size_t block_size, std::size_t root_size,
                            double eps, const DecomposeConfig& config);
};

/// W over the local ids of one block, cached densely and charged to a
/// context's ledger on first read.
class LocalLabels {
 public:
  LocalLabels(std::span<const ElementId> ids, const QueryContext& ctx,
              std::string_view phase);

  std::size_t size() const { return ids_.size(); }
  ElementId global_id(ElementId local) const { return ids_[local]; }

  /// W(a, b) for local ids a != b.
  bool prefers(ElementId a, ElementId b);

 private:
  std::vector<ElementId> ids_;
  QueryContext ctx_;
  std::string phase_;
  std::vector<std::int8_t> cache_;  // N*N, -1 unknown
};

/// The family of per-element, per-scale pair samples E_{v,i}.
///
/// An entry of cell (v, i) is the partner x of the pair (v, x): a local id in
/// [0, N), or a sentinel at virtual position q (q < 1 or q > N) encoded as
/// q - 1.
class SampleEnsemble {
 public:
  using Entry = std::int32_t;

  explicit SampleEnsemble(const EnsembleShape& shape);

  const EnsembleShape& shape() const { return shape_; }

  std::span<const Entry> cell(ElementId v, int scale) const;
  std::span<Entry> cell(ElementId v, int scale);

  bool is_sentinel(Entry e) const {
    return e < 0 || e >= static_cast<Entry>(shape_.block_size);
  }

  /// Position of an entry's partner under `pi` (virtual for sentinels).
  std::int64_t partner_position(Entry e, const Permutation& pi) const {
    return is_sentinel(e) ? std::int64_t{e} + 1
                          : static_cast<std::int64_t>(pi.rank_of(static_cast<ElementId>(e)));
  }

  /// Redraws every cell of v from the windows around v's position in `pi`.
  void redraw(ElementId v, const Permutation& pi, RandomSource& rng);

  friend bool operator==(const SampleEnsemble& a, const SampleEnsemble& b) {
    return a.entries_ == b.entries_;
  }

 private:
  std::size_t offset(ElementId v, int scale) const;

  EnsembleShape shape_;
  std::vector<Entry> entries_;
};

/// Draws a fresh ensemble: for every v and scale i in [B, L], m independent
/// uniform positions in [rank(v) - 2^i, rank(v) + 2^i] (no clipping).
/// `pi` must be a permutation of the local ids 0..N-1.
SampleEnsemble build_ensemble(const Permutation& pi, const EnsembleShape& shape,
                              RandomSource& rng);

struct Move {
  ElementId element = 0;  // local id
  Position target = 0;
  double estimate = 0;    // sampled TestMove
};

/// First (u, j) such that the cell E_{u,l}, l = ceil(log2 |j - rank(u)|) in
/// [B, L], is successful at (u, j) and its sampled TestMove exceeds
/// eps * |j - rank(u)| / ln n. Elements are scanned by rank and, per element,
/// targets by increasing distance (the smaller j first on ties). Every
/// target is considered.
std::optional<Move> find_improving_move(const SampleEnsemble& s, const Permutation& pi,
                                        LocalLabels& labels,
                                        double success_fraction);

struct RefreshStats {
  std::size_t interesting_cells = 0;
  /// Sum over cells of the multiset symmetric difference |E Δ E'|.
  std::uint64_t distance = 0;

  RefreshStats& operator+=(const RefreshStats& o) {
    interesting_cells += o.interesting_cells;
    distance += o.distance;
    return *this;
  }
};

/// Rewrites `s`, drawn for `pi`, into a sample for perm_move(pi, u, j): cells
/// whose window contents change have their lost partners mapped in rank order
/// onto the gained ones, the cells of u are redrawn, all other cells are left
/// untouched.
RefreshStats refresh_ensemble(SampleEnsemble& s, const Permutation& pi, ElementId u,
                              Position j, RandomSource& rng);

}  // namespace activerank
