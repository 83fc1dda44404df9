#include "activerank/types.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace activerank {

Permutation::Permutation(std::vector<ElementId> order) : order_(std::move(order)) {
  ElementId max_id = 0;
  for (ElementId v : order_) max_id = std::max(max_id, v);
  rank_.assign(order_.empty() ? 0 : static_cast<std::size_t>(max_id) + 1, 0);
  for (std::size_t p = 0; p < order_.size(); ++p) {
    Position& slot = rank_[order_[p]];
    if (slot != 0) {
      throw std::invalid_argument("permutation repeats element " +
                                  std::to_string(order_[p]));
    }
    slot = p + 1;
  }
}

Permutation Permutation::identity(std::size_t n) {
  std::vector<ElementId> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = static_cast<ElementId>(i);
  return Permutation(std::move(order));
}

ElementId Permutation::at(Position p) const {
  if (p == 0 || p > order_.size()) {
    throw std::out_of_range("position " + std::to_string(p) + " outside [1, " +
                            std::to_string(order_.size()) + "]");
  }
  return order_[p - 1];
}

Position Permutation::rank_of(ElementId v) const {
  if (!contains(v)) {
    throw std::out_of_range("element " + std::to_string(v) +
                            " not in permutation");
  }
  return rank_[v];
}

void Permutation::move_to(ElementId v, Position i) {
  const Position r = rank_of(v);
  if (i == 0 || i > order_.size()) {
    throw std::out_of_range("target position " + std::to_string(i) +
                            " outside [1, " + std::to_string(order_.size()) +
                            "]");
  }
  if (i > r) {
    for (Position p = r; p < i; ++p) {
      order_[p - 1] = order_[p];
      rank_[order_[p - 1]] = p;
    }
  } else {
    for (Position p = r; p > i; --p) {
      order_[p - 1] = order_[p - 2];
      rank_[order_[p - 1]] = p;
    }
  }
  order_[i - 1] = v;
  rank_[v] = i;
}

Permutation Permutation::restricted_to(std::span<const ElementId> subset) const {
  std::vector<std::pair<Position, ElementId>> keyed;
  keyed.reserve(subset.size());
  for (ElementId v : subset) keyed.emplace_back(rank_of(v), v);
  std::sort(keyed.begin(), keyed.end());
  std::vector<ElementId> order;
  order.reserve(keyed.size());
  for (const auto& [pos, v] : keyed) order.push_back(v);
  return Permutation(std::move(order));
}

Permutation perm_move(const Permutation& pi, ElementId v, Position i) {
  Permutation moved = pi;
  moved.move_to(v, i);
  return moved;
}

}  // namespace activerank
