#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "activerank/exact.hpp"
#include "activerank/metrics.hpp"
#include "activerank/oracles.hpp"
#include "activerank/svm.hpp"
#include "test_oracles.hpp"

using namespace activerank;
namespace to = testing_oracles;

namespace {

double hinge(double x) { return std::max(0.0, 1.0 - x); }

double reference_objective(const FeatureMap& phi, const std::vector<Constraint>& cs,
                           const std::vector<double>& w) {
  double f = 0;
  for (const auto& c : cs) {
    double margin = 0;
    for (std::size_t k = 0; k < w.size(); ++k) margin += (phi.row(c.before)[k] - phi.row(c.after)[k]) * w[k];
    f += c.weight * hinge(margin);
  }
  return f;
}

std::vector<double> random_w(std::size_t d, double radius, RandomSource& rng) {
  std::vector<double> w(d);
  double norm = 0;
  for (double& x : w) {
    x = rng.normal();
    norm += x * x;
  }
  for (double& x : w) x *= radius / std::sqrt(norm);
  return w;
}

FeatureMap random_features(std::size_t n, std::size_t d, RandomSource& rng) {
  return planted_features(Permutation::identity(n), d, 1.0, rng);
}

}  // namespace

TEST(Features, Validation) {
  EXPECT_THROW(FeatureMap({{0.5, 0.5}, {0.1}}), std::invalid_argument);
  EXPECT_THROW(FeatureMap({{0.9, 0.9}}), std::invalid_argument);
  const FeatureMap phi({{0.6, 0.8}, {0.0, -1.0}});
  EXPECT_EQ(phi.size(), 2u);
  EXPECT_EQ(phi.dim(), 2u);
  const std::vector<double> w{1.0, 0.0};
  EXPECT_DOUBLE_EQ(phi.score(0, w), 0.6);
  const FeatureMap back = nlohmann::json(phi).get<FeatureMap>();
  EXPECT_DOUBLE_EQ(back.row(1)[1], -1.0);
}

TEST(Features, PlantedRowsFitTheUnitBall) {
  RandomSource rng(61);
  const Permutation order({3, 0, 4, 1, 2});
  const FeatureMap phi = planted_features(order, 4, 0.0, rng);
  double longest = 0;
  for (ElementId u = 0; u < 5; ++u) {
    double norm = 0;
    for (double x : phi.row(u)) norm += x * x;
    longest = std::max(longest, std::sqrt(norm));
  }
  EXPECT_NEAR(longest, 1.0, 1e-12);
  // Without noise the first coordinate orders the elements like `order`.
  const std::vector<double> w{1, 0, 0, 0};
  EXPECT_EQ(extract_permutation(w, phi), order);
}

TEST(Constraints, Svm1CoversEveryPair) {
  std::mt19937_64 gen(62);
  const auto w = to::Matrix::coin_flips(9, gen);
  const ConstraintSet cs = svm1_constraints(w);
  EXPECT_EQ(cs.kind, SvmKind::kSvm1);
  ASSERT_EQ(cs.ordered.size(), 36u);
  for (const auto& c : cs.ordered) EXPECT_TRUE(w.prefers(c.before, c.after));
}

TEST(Constraints, Svm2SplitsCrossAndWithin) {
  std::mt19937_64 gen(63);
  const auto w = to::Matrix::coin_flips(7, gen);
  const OrderedDecomposition d({{4, 1}, {0}, {2, 6, 3, 5}});
  const ConstraintSet cs = svm2_constraints(d, w);
  EXPECT_EQ(cs.ordered.size(), 2u * 1 + 2u * 4 + 1u * 4);
  EXPECT_EQ(cs.within.size(), 1u + 6u);
  for (const auto& c : cs.ordered) EXPECT_LT(d.block_of(c.before), d.block_of(c.after));
  for (const auto& c : cs.within) {
    EXPECT_EQ(d.block_of(c.before), d.block_of(c.after));
    EXPECT_TRUE(w.prefers(c.before, c.after));
  }
}

TEST(Constraints, Delta3WeightsSumToWithinPairCount) {
  std::mt19937_64 gen(64);
  const auto w = to::Matrix::coin_flips(10, gen);
  const OrderedDecomposition d({{0, 1, 2, 3}, {4}, {5, 6, 7, 8, 9}});
  RandomSource rng(64);
  QueryLedger ledger;
  const CountingOracle counted(QueryContext(w, ledger), phase::kSvm);
  const ConstraintSet cs = sample_delta3(d, counted, 500, rng);
  EXPECT_EQ(cs.kind, SvmKind::kSvm3);
  EXPECT_EQ(cs.draws, 500u);
  double total = 0;
  for (const auto& c : cs.within) {
    total += c.weight;
    EXPECT_TRUE(w.prefers(c.before, c.after));
  }
  EXPECT_NEAR(total, 6.0 + 10.0, 1e-9);
  EXPECT_LE(ledger.total(), 16u);
  EXPECT_EQ(cs.ordered.size(), svm2_constraints(d, w).ordered.size());

  const ConstraintSet singles = sample_delta3(OrderedDecomposition({{0}, {1}, {2}}), w, 50, rng);
  EXPECT_TRUE(singles.within.empty());
  EXPECT_EQ(singles.ordered.size(), 3u);
}

TEST(Objective, MatchesReference) {
  RandomSource rng(65);
  std::mt19937_64 gen(65);
  const auto w = to::Matrix::coin_flips(15, gen);
  const FeatureMap phi = random_features(15, 4, rng);
  const SvmProblem p{phi, svm1_constraints(w), 1.0};
  for (int t = 0; t < 20; ++t) {
    const auto v = random_w(4, rng.uniform01(), rng);
    EXPECT_NEAR(objective_value(p, v), reference_objective(phi, p.constraints.ordered, v), 1e-9);
  }
  EXPECT_THROW(objective_value(p, std::vector<double>{2, 0, 0, 0}), std::invalid_argument);
  EXPECT_THROW(objective_value(p, std::vector<double>{0, 0}), std::invalid_argument);
}

TEST(Objective, SubgradientMatchesFiniteDifferences) {
  RandomSource rng(66);
  std::mt19937_64 gen(66);
  const auto w = to::Matrix::coin_flips(20, gen);
  const OrderedDecomposition d({{0, 1, 2, 3, 4, 5, 6, 7, 8, 9}, {10, 11, 12, 13, 14, 15, 16, 17, 18, 19}});
  const SvmProblem p{random_features(20, 3, rng), sample_delta3(d, w, 200, rng), 2.0};
  for (int t = 0; t < 20; ++t) {
    const auto v = random_w(3, 1.5, rng);
    const auto g = subgradient(p, v);
    for (std::size_t k = 0; k < 3; ++k) {
      auto plus = v, minus = v;
      plus[k] += 1e-7;
      minus[k] -= 1e-7;
      EXPECT_NEAR((objective_value(p, plus) - objective_value(p, minus)) / 2e-7, g[k], 1e-4);
    }
  }
}

TEST(Solve, ImprovesOnZeroAndStaysFeasible) {
  RandomSource rng(67);
  const PlantedModel w(40, 0.1, 67);
  const FeatureMap phi = planted_features(w.sigma_star(), 5, 0.2, rng);
  const SvmProblem p{phi, svm1_constraints(w), 1.0};
  const SolveResult r = solve(p, {2000, true});
  const std::vector<double> zero(5, 0.0);
  EXPECT_LE(r.objective, objective_value(p, zero));
  EXPECT_NEAR(r.objective, objective_value(p, r.w), 1e-9);
  EXPECT_EQ(r.iterates.size(), 2000u);
  for (const auto& it : r.iterates) {
    double norm = 0;
    for (double x : it) norm += x * x;
    EXPECT_LE(std::sqrt(norm), 1.0 + 1e-9);
  }
  // The planted coordinate carries the order; the learned ranking is close.
  const Permutation learned = extract_permutation(r.w, phi);
  EXPECT_LT(kendall_tau(learned, w.sigma_star()), pairs_of(40) / 10);
}

TEST(Extract, TiesKeepIncreasingId) {
  const FeatureMap phi({{0.5}, {0.7}, {0.5}, {0.1}});
  EXPECT_EQ(extract_permutation(std::vector<double>{1.0}, phi).order(),
            (std::vector<ElementId>{1, 0, 2, 3}));
}

TEST(SlackBound, HoldsOnRandomTournaments) {
  RandomSource rng(68);
  for (int t = 0; t < 30; ++t) {
    const Tournament w = Tournament::random(7, rng);
    const FeatureMap phi = random_features(7, 3, rng);
    const auto v = random_w(3, rng.uniform01(), rng);
    const SlackBoundReport r = verify_slack_lower_bound(v, phi, w);
    EXPECT_TRUE(r.holds);
    EXPECT_EQ(r.optimal_cost, brute_force_mfast(w).cost);
    EXPECT_NEAR(r.f1, reference_objective(phi, svm1_constraints(w).ordered, v), 1e-9);
  }
}

TEST(SubsampleSize, Formula) {
  const double expected = std::ceil(std::pow(0.3, -6) * 9.0 * 5 * std::log(1.0 / 0.3 + 2.0));
  EXPECT_EQ(subsample_size(0.3, 1.0, 5), static_cast<std::uint64_t>(expected));
  EXPECT_EQ(subsample_size(0.5, 2.0, 3, 0.5, LogArgument::kCOverEps),
            static_cast<std::uint64_t>(std::ceil(0.5 * 64 * 25 * 3 * std::log(4.0))));
  EXPECT_EQ(subsample_size(0.5, 1.0, 1, 1.0, LogArgument::kInverseEps),
            static_cast<std::uint64_t>(std::ceil(64 * 9 * std::log(2.0))));
}
