#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "activerank/exact.hpp"
#include "activerank/metrics.hpp"
#include "activerank/oracles.hpp"
#include "test_oracles.hpp"

using namespace activerank;
namespace to = testing_oracles;

namespace {
const std::filesystem::path kData = ACTIVERANK_TEST_DATA;
}

TEST(Tournament, FromOrderIsTransitive) {
  const Permutation order({3, 0, 2, 1});
  const Tournament t = Tournament::from_order(order);
  EXPECT_EQ(mfast_cost(order, t), 0u);
  EXPECT_TRUE(t.prefers(3, 1));
  EXPECT_FALSE(t.prefers(1, 3));
}

TEST(Tournament, AntisymmetricEverywhere) {
  RandomSource rng(4);
  const Tournament t = Tournament::random(30, rng);
  for (ElementId u = 0; u < 30; ++u) {
    for (ElementId v = 0; v < 30; ++v) {
      if (u != v) EXPECT_NE(t.prefers(u, v), t.prefers(v, u));
    }
  }
}

TEST(Tournament, SizeGuard) {
  EXPECT_THROW(Tournament(Tournament::kMaxDenseSize + 1), std::invalid_argument);
}

TEST(Planted, DeterministicPerSeed) {
  const PlantedModel a(50, 0.2, 9), b(50, 0.2, 9), c(50, 0.2, 10);
  EXPECT_EQ(a.materialize(), b.materialize());
  EXPECT_FALSE(a.materialize() == c.materialize());
  EXPECT_EQ(make_planted(50, 0.2, 9), a.materialize());
  EXPECT_THROW(PlantedModel(5, 0.5, 1), std::invalid_argument);
}

TEST(Planted, FlipsAgreeWithHiddenOrder) {
  const PlantedModel m(200, 0.2, 3);
  std::size_t flips = 0;
  for (ElementId u = 0; u < 200; ++u) {
    for (ElementId v = u + 1; v < 200; ++v) {
      const bool truth = m.sigma_star().precedes(u, v);
      EXPECT_EQ(m.prefers(u, v), truth != m.flipped(u, v));
      flips += m.flipped(u, v);
    }
  }
  // 19900 pairs at p = 0.2: mean 3980, sd 56.
  EXPECT_NEAR(static_cast<double>(flips), 3980.0, 300.0);
}

TEST(Planted, NoiselessModelIsItsHiddenOrder) {
  const PlantedModel m(40, 0.0, 2);
  EXPECT_EQ(mfast_cost(m.sigma_star(), m), 0u);
}

TEST(TournamentIo, ThreeCycleFixture) {
  const Tournament t = load_tournament(kData / "three_cycle.txt");
  ASSERT_EQ(t.size(), 3u);
  EXPECT_TRUE(t.prefers(0, 1));
  EXPECT_TRUE(t.prefers(1, 2));
  EXPECT_TRUE(t.prefers(2, 0));
  EXPECT_EQ(brute_force_mfast(t).cost, 1u);
}

TEST(TournamentIo, JsonFixtureMatchesEnumeration) {
  const Tournament t = load_tournament(kData / "five.json");
  ASSERT_EQ(t.size(), 5u);
  EXPECT_EQ(brute_force_mfast(t).cost, to::enumerate_optimum(to::iota_ids(5), t));
}

TEST(TournamentIo, TextAndJsonRoundTrip) {
  RandomSource rng(8);
  const Tournament t = Tournament::random(17, rng);
  std::stringstream text, json;
  write_tournament(text, t);
  write_tournament_json(json, t);
  EXPECT_EQ(read_tournament(text), t);
  EXPECT_EQ(read_tournament_json(json), t);

  const auto path = std::filesystem::temp_directory_path() / "activerank_roundtrip.json";
  store_tournament(path, t);
  EXPECT_EQ(load_tournament(path), t);
  std::filesystem::remove(path);
}

TEST(TournamentIo, RejectsMalformedInput) {
  const auto parse = [](const std::string& s) {
    std::istringstream in(s);
    return read_tournament(in);
  };
  EXPECT_THROW(parse("3\n0 1 1\n"), std::runtime_error);
  EXPECT_THROW(parse("n=3\n0 1 1\n"), std::runtime_error);             // missing pairs
  EXPECT_THROW(parse("n=2\n0 1 2\n"), std::runtime_error);             // bad label
  EXPECT_THROW(parse("n=2\n0 1 1\n1 0 1\n"), std::runtime_error);      // not antisymmetric
  EXPECT_THROW(parse("n=2\n0 5 1\n"), std::runtime_error);             // out of range
  EXPECT_NO_THROW(parse("# header\nn=2\n\n1 0 0\n"));
}
