#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace activerank {

// Element ids are dense and 0-based within an instance; positions are 1-based.
using ElementId = std::uint32_t;
using Position = std::size_t;

/// A linear order over a set of element ids with O(1) rank lookup.
///
/// Position 1 holds the most preferred element. The element set need not be
/// {0..n-1}: restrictions of a permutation to a block keep the original ids.
class Permutation {
 public:
  Permutation() = default;

  /// Throws std::invalid_argument if `order` contains a duplicate id.
  explicit Permutation(std::vector<ElementId> order);

  static Permutation identity(std::size_t n);

  std::size_t size() const { return order_.size(); }
  bool empty() const { return order_.empty(); }

  /// Element at 1-based position `p`. Throws std::out_of_range.
  ElementId at(Position p) const;

  /// 1-based position of `v`. Throws std::out_of_range for unknown elements.
  Position rank_of(ElementId v) const;

  bool contains(ElementId v) const {
    return v < rank_.size() && rank_[v] != 0;
  }

  const std::vector<ElementId>& order() const { return order_; }

  /// In-place version of perm_move. Cost is O(|i - rank_of(v)|).
  void move_to(ElementId v, Position i);

  /// The subsequence of this order consisting of `subset` (which must be
  /// contained in the permutation).
  Permutation restricted_to(std::span<const ElementId> subset) const;

  /// True iff u is placed before v.
  bool precedes(ElementId u, ElementId v) const {
    return rank_of(u) < rank_of(v);
  }

  friend bool operator==(const Permutation& a, const Permutation& b) {
    return a.order_ == b.order_;
  }

 private:
  std::vector<ElementId> order_;
  std::vector<Position> rank_;  // indexed by id; 0 marks absence
};

/// π_{v→i}: `v` moved to position `i`, everyone else in unchanged relative
/// order. Throws std::out_of_range if i is not in [1, n] or v is unknown.
Permutation perm_move(const Permutation& pi, ElementId v, Position i);

inline Position rank_of(const Permutation& pi, ElementId v) {
  return pi.rank_of(v);
}

/// Ordered list of pairwise-disjoint, non-empty blocks.
class OrderedDecomposition {
 public:
  OrderedDecomposition() = default;

  /// Throws std::invalid_argument on empty blocks or repeated elements.
  explicit OrderedDecomposition(std::vector<std::vector<ElementId>> blocks);

  /// The trivial decomposition {V}.
  static OrderedDecomposition trivial(std::span<const ElementId> elements);
  /// One singleton block per element, in the given order.
  static OrderedDecomposition singletons(const Permutation& order);

  std::size_t block_count() const { return blocks_.size(); }
  std::size_t element_count() const { return element_count_; }
  const std::vector<std::vector<ElementId>>& blocks() const { return blocks_; }
  const std::vector<ElementId>& block(std::size_t i) const {
    return blocks_.at(i);
  }

  /// Index of the block containing v. Throws std::out_of_range.
  std::size_t block_of(ElementId v) const;

  /// True iff the union of blocks is exactly the element set of `pi`.
  bool covers(const Permutation& pi) const;

  /// Appends the blocks of `tail` after this decomposition's blocks.
  void append(const OrderedDecomposition& tail);

  friend bool operator==(const OrderedDecomposition& a,
                         const OrderedDecomposition& b) {
    return a.blocks_ == b.blocks_;
  }

 private:
  std::vector<std::vector<ElementId>> blocks_;
  std::vector<std::size_t> block_index_;  // indexed by id; SIZE_MAX if absent
  std::size_t element_count_ = 0;
};

/// True iff every element of an earlier block precedes every element of a
/// later block in `pi`. Throws std::invalid_argument if `d` does not cover
/// exactly the elements of `pi`.
bool respects(const Permutation& pi, const OrderedDecomposition& d);

/// ln n / ln ln n. Throws std::invalid_argument for n < 3.
double small_block_threshold(std::size_t n);

/// A block is small in an instance of size n when |block| <= ln n / ln ln n.
bool is_small_block(std::size_t block_size, std::size_t n);

inline std::uint64_t pairs_of(std::uint64_t n) { return n * (n - 1) / 2; }

}  // namespace activerank
