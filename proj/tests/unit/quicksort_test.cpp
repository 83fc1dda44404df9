#include <gtest/gtest.h>

#include <random>

#include "activerank/metrics.hpp"
#include "activerank/oracles.hpp"
#include "activerank/quicksort.hpp"
#include "test_oracles.hpp"

using namespace activerank;
namespace to = testing_oracles;

TEST(QuickSort, SortsTransitiveInputs) {
  std::mt19937_64 gen(31);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = gen() % 100;
    const auto order = to::shuffled_ids(n, gen);
    const auto w = to::Matrix::from_sequence(order);
    QueryLedger ledger;
    const QueryContext ctx(w, ledger);
    RandomSource rng(t);
    EXPECT_EQ(quicksort_rank(to::iota_ids(n), ctx, rng).order(), order);
    EXPECT_LE(ledger.total(), pairs_of(n));
    EXPECT_EQ(ledger.total(), ledger.phase_count(phase::kQuickSort));
  }
}

TEST(QuickSort, OutputIsAPermutationOfTheInput) {
  RandomSource rng(32);
  const Tournament w = Tournament::random(300, rng);
  QueryLedger ledger;
  const QueryContext ctx(w, ledger);
  const std::vector<ElementId> subset{299, 5, 17, 120, 64};
  const Permutation pi = quicksort_rank(subset, ctx, rng);
  EXPECT_EQ(pi.size(), subset.size());
  for (ElementId v : subset) EXPECT_TRUE(pi.contains(v));
}

TEST(QuickSort, DeterministicPerSeed) {
  RandomSource gen(33);
  const Tournament w = Tournament::random(200, gen);
  QueryLedger l1, l2;
  RandomSource a(7), b(7);
  EXPECT_EQ(quicksort_rank(to::iota_ids(200), QueryContext(w, l1), a),
            quicksort_rank(to::iota_ids(200), QueryContext(w, l2), b));
  EXPECT_EQ(l1.total(), l2.total());
}

TEST(QuickSort, QueryCountIsNearNLogN) {
  // Expected comparisons of randomized QuickSort: 2(n+1)H_n - 4n.
  const std::size_t n = 2000;
  double harmonic = 0;
  for (std::size_t k = 1; k <= n; ++k) harmonic += 1.0 / static_cast<double>(k);
  const double expected = 2.0 * (n + 1) * harmonic - 4.0 * n;
  double mean = 0;
  for (int s = 0; s < 10; ++s) {
    const PlantedModel w(n, 0.0, 40 + s);
    QueryLedger ledger;
    RandomSource rng(s);
    quicksort_rank(to::iota_ids(n), QueryContext(w, ledger), rng);
    mean += static_cast<double>(ledger.total()) / 10.0;
  }
  EXPECT_NEAR(mean / expected, 1.0, 0.1);
}
