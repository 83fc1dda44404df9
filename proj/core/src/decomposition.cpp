#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "activerank/types.hpp"

namespace activerank {

namespace {
constexpr std::size_t kAbsent = std::numeric_limits<std::size_t>::max();
}

OrderedDecomposition::OrderedDecomposition(
    std::vector<std::vector<ElementId>> blocks)
    : blocks_(std::move(blocks)) {
  ElementId max_id = 0;
  for (const auto& b : blocks_) {
    if (b.empty()) throw std::invalid_argument("decomposition has an empty block");
    for (ElementId v : b) max_id = std::max(max_id, v);
    element_count_ += b.size();
  }
  block_index_.assign(element_count_ == 0 ? 0 : std::size_t{max_id} + 1, kAbsent);
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    for (ElementId v : blocks_[i]) {
      if (block_index_[v] != kAbsent) {
        throw std::invalid_argument("element " + std::to_string(v) +
                                    " appears in more than one block");
      }
      block_index_[v] = i;
    }
  }
}

OrderedDecomposition OrderedDecomposition::trivial(
    std::span<const ElementId> elements) {
  return OrderedDecomposition(
      {std::vector<ElementId>(elements.begin(), elements.end())});
}

OrderedDecomposition OrderedDecomposition::singletons(const Permutation& order) {
  std::vector<std::vector<ElementId>> blocks;
  blocks.reserve(order.size());
  for (ElementId v : order.order()) blocks.push_back({v});
  return OrderedDecomposition(std::move(blocks));
}

std::size_t OrderedDecomposition::block_of(ElementId v) const {
  if (v >= block_index_.size() || block_index_[v] == kAbsent) {
    throw std::out_of_range("element " + std::to_string(v) +
                            " not in decomposition");
  }
  return block_index_[v];
}

bool OrderedDecomposition::covers(const Permutation& pi) const {
  if (pi.size() != element_count_) return false;
  for (ElementId v : pi.order()) {
    if (v >= block_index_.size() || block_index_[v] == kAbsent) return false;
  }
  return true;
}

void OrderedDecomposition::append(const OrderedDecomposition& tail) {
  auto blocks = blocks_;
  blocks.insert(blocks.end(), tail.blocks_.begin(), tail.blocks_.end());
  *this = OrderedDecomposition(std::move(blocks));
}

bool respects(const Permutation& pi, const OrderedDecomposition& d) {
  if (!d.covers(pi)) {
    throw std::invalid_argument("decomposition does not cover the permutation");
  }
  Position prev_max = 0;
  for (const auto& block : d.blocks()) {
    Position lo = std::numeric_limits<Position>::max();
    Position hi = 0;
    for (ElementId v : block) {
      const Position r = pi.rank_of(v);
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
    if (lo < prev_max) return false;
    prev_max = hi;
  }
  return true;
}

double small_block_threshold(std::size_t n) {
  if (n < 3) {
    throw std::invalid_argument("small-block threshold needs n >= 3, got " +
                                std::to_string(n));
  }
  const double ln_n = std::log(static_cast<double>(n));
  return ln_n / std::log(ln_n);
}

bool is_small_block(std::size_t block_size, std::size_t n) {
  return static_cast<double>(block_size) <= small_block_threshold(n);
}

}  // namespace activerank
