#include <gtest/gtest.h>

#include <random>

#include "activerank/serialization.hpp"
#include "activerank/types.hpp"
#include "test_oracles.hpp"

using namespace activerank;
namespace to = testing_oracles;

TEST(Permutation, RanksAreOneBased) {
  const Permutation pi({4, 2, 7});
  EXPECT_EQ(pi.size(), 3u);
  EXPECT_EQ(pi.at(1), 4u);
  EXPECT_EQ(pi.rank_of(7), 3u);
  EXPECT_TRUE(pi.precedes(4, 7));
  EXPECT_FALSE(pi.contains(3));
  EXPECT_THROW(pi.at(0), std::out_of_range);
  EXPECT_THROW(pi.rank_of(3), std::out_of_range);
}

TEST(Permutation, RejectsDuplicates) {
  EXPECT_THROW(Permutation({1, 2, 1}), std::invalid_argument);
}

TEST(Permutation, MoveMatchesReinsertion) {
  std::mt19937_64 gen(1);
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = 1 + gen() % 12;
    const auto seq = to::shuffled_ids(n, gen);
    const Permutation pi(seq);
    const std::size_t from = gen() % n, target = gen() % n;
    const auto expected = to::reinsert(seq, from, target);
    EXPECT_EQ(perm_move(pi, seq[from], target + 1).order(), expected);
    Permutation in_place = pi;
    in_place.move_to(seq[from], target + 1);
    EXPECT_EQ(in_place.order(), expected);
    for (std::size_t p = 0; p < n; ++p) EXPECT_EQ(in_place.rank_of(expected[p]), p + 1);
  }
}

TEST(Permutation, MoveOutsideRangeThrows) {
  const Permutation pi = Permutation::identity(4);
  EXPECT_THROW(perm_move(pi, 1, 0), std::out_of_range);
  EXPECT_THROW(perm_move(pi, 1, 5), std::out_of_range);
}

TEST(Permutation, RestrictionKeepsRelativeOrder) {
  const Permutation pi({5, 0, 3, 1, 4});
  const std::vector<ElementId> subset{1, 5, 4};
  EXPECT_EQ(pi.restricted_to(subset).order(), (std::vector<ElementId>{5, 1, 4}));
}

TEST(Decomposition, BlocksAndLookup) {
  const OrderedDecomposition d({{3, 1}, {0}, {2, 4}});
  EXPECT_EQ(d.block_count(), 3u);
  EXPECT_EQ(d.element_count(), 5u);
  EXPECT_EQ(d.block_of(4), 2u);
  EXPECT_THROW(d.block_of(9), std::out_of_range);
  EXPECT_THROW(OrderedDecomposition({{1}, {}}), std::invalid_argument);
  EXPECT_THROW(OrderedDecomposition({{1, 2}, {2}}), std::invalid_argument);
}

TEST(Decomposition, Respects) {
  const OrderedDecomposition d({{3, 1}, {0}, {2, 4}});
  EXPECT_TRUE(respects(Permutation({1, 3, 0, 4, 2}), d));
  EXPECT_FALSE(respects(Permutation({1, 0, 3, 4, 2}), d));
  EXPECT_THROW(respects(Permutation({1, 3, 0, 4}), d), std::invalid_argument);
  EXPECT_TRUE(respects(Permutation({0, 1, 2}), OrderedDecomposition::trivial(std::vector<ElementId>{2, 0, 1})));
  EXPECT_TRUE(respects(Permutation({2, 0, 1}), OrderedDecomposition::singletons(Permutation({2, 0, 1}))));
}

TEST(Decomposition, AppendConcatenates) {
  OrderedDecomposition d({{0, 1}});
  d.append(OrderedDecomposition({{2}, {3}}));
  EXPECT_EQ(d.block_count(), 3u);
  EXPECT_EQ(d.block_of(3), 2u);
  EXPECT_TRUE(d.covers(Permutation::identity(4)));
}

TEST(SmallBlocks, ThresholdIsLogOverLogLog) {
  const double n = 1000;
  EXPECT_NEAR(small_block_threshold(1000), std::log(n) / std::log(std::log(n)), 1e-12);
  EXPECT_TRUE(is_small_block(3, 1000));   // threshold 3.58
  EXPECT_FALSE(is_small_block(4, 1000));
  EXPECT_THROW(small_block_threshold(2), std::invalid_argument);
  EXPECT_EQ(pairs_of(8), 28u);
}

TEST(Serialization, RoundTrips) {
  const Permutation pi({2, 0, 1});
  const OrderedDecomposition d({{2}, {0, 1}});
  EXPECT_EQ(nlohmann::json(pi).get<Permutation>(), pi);
  EXPECT_EQ(nlohmann::json(d).get<OrderedDecomposition>(), d);
  EXPECT_EQ(nlohmann::json(d).dump(), "[[2],[0,1]]");
}
