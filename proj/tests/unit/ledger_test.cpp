#include <gtest/gtest.h>

#include "activerank/oracles.hpp"
#include "activerank/query.hpp"
#include "activerank/serialization.hpp"

using namespace activerank;

namespace {

class CountingTournament final : public PreferenceOracle {
 public:
  explicit CountingTournament(std::size_t n) : t_(n) {}
  std::size_t size() const override { return t_.size(); }
  bool prefers(ElementId u, ElementId v) const override {
    ++reads;
    return t_.prefers(u, v);
  }
  mutable std::size_t reads = 0;

 private:
  Tournament t_;
};

}  // namespace

TEST(Ledger, AntisymmetricPairChargedOnce) {
  CountingTournament w(4);
  QueryLedger ledger;
  const QueryContext ctx(w, ledger);
  const bool forward = ctx.prefers(1, 3, phase::kQuickSort);
  const bool backward = ctx.prefers(3, 1, phase::kEnsemble);
  EXPECT_NE(forward, backward);
  EXPECT_EQ(ledger.total(), 1u);
  EXPECT_EQ(ledger.phase_count(phase::kQuickSort), 1u);
  EXPECT_EQ(ledger.phase_count(phase::kEnsemble), 0u);
  EXPECT_EQ(w.reads, 1u);
}

TEST(Ledger, RepeatedQueryIsFree) {
  CountingTournament w(5);
  QueryLedger ledger;
  const QueryContext ctx(w, ledger);
  for (int k = 0; k < 10; ++k) EXPECT_TRUE(ctx.prefers(0, 4, phase::kChaosTest));
  EXPECT_EQ(ledger.total(), 1u);
  EXPECT_EQ(w.reads, 1u);
  EXPECT_EQ(ledger.cached(4, 0), std::optional<bool>(false));
  EXPECT_EQ(ledger.cached(1, 2), std::nullopt);
}

TEST(Ledger, SelfPairRejected) {
  Tournament w(3);
  QueryLedger ledger;
  EXPECT_THROW(counted_query(w, 2, 2, ledger, phase::kAudit), std::invalid_argument);
}

TEST(Ledger, TotalIsSumOfPhases) {
  Tournament w(6);
  QueryLedger ledger;
  const QueryContext ctx(w, ledger);
  const CountingOracle retry(ctx, phase::kRetry);
  for (ElementId u = 0; u < 6; ++u) {
    for (ElementId v = 0; v < 6; ++v) {
      if (u != v) (u % 2 ? retry.prefers(u, v) : ctx.prefers(u, v, phase::kSvm));
    }
  }
  std::uint64_t sum = 0;
  for (const auto& [_, count] : ledger.per_phase()) sum += count;
  EXPECT_EQ(sum, ledger.total());
  EXPECT_EQ(ledger.total(), 15u);
  const nlohmann::json j = ledger;
  EXPECT_EQ(j["total"], 15);
}
