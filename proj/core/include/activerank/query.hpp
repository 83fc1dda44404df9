#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>

#include "activerank/types.hpp"

namespace activerank {

/// Source of pairwise preference labels W(u, v) in {0, 1}.
///
/// Implementations must be antisymmetric (W(u,v) + W(v,u) = 1 for u != v) and
/// stable: the same pair yields the same answer for the lifetime of the
/// oracle. An implementation may block while waiting for an answer.
class PreferenceOracle {
 public:
  virtual ~PreferenceOracle() = default;

  virtual std::size_t size() const = 0;

  /// W(u, v): true iff u is preferred to (should precede) v.
  virtual bool prefers(ElementId u, ElementId v) const = 0;
};

/// Canonical phase names used for ledger attribution.
namespace phase {
inline constexpr std::string_view kQuickSort = "qsort";
inline constexpr std::string_view kChaosTest = "chaos_test";
inline constexpr std::string_view kEnsemble = "ensemble";
inline constexpr std::string_view kSmallBlock = "smallblock";
inline constexpr std::string_view kBlockSample = "block_sample";
inline constexpr std::string_view kRetry = "retry";
inline constexpr std::string_view kSvm = "svm";
inline constexpr std::string_view kAudit = "audit";
}  // namespace phase

/// Counts every distinct unordered pair read from an oracle, attributed to the
/// phase that first asked for it. Answers are cached, so re-asking a pair (in
/// either orientation) is free.
class QueryLedger {
 public:
  /// W(u, v) if the pair {u, v} has already been paid for.
  std::optional<bool> cached(ElementId u, ElementId v) const;

  /// Records W(u, v) = u_preferred and charges `phase` once. Recording an
  /// already-cached pair is a no-op.
  void record(ElementId u, ElementId v, bool u_preferred, std::string_view phase);

  std::uint64_t total() const { return total_; }
  std::uint64_t phase_count(std::string_view phase) const;
  const std::map<std::string, std::uint64_t, std::less<>>& per_phase() const {
    return per_phase_;
  }

 private:
  static std::uint64_t key(ElementId u, ElementId v) {
    const ElementId lo = u < v ? u : v;
    const ElementId hi = u < v ? v : u;
    return (std::uint64_t{lo} << 32) | hi;
  }

  std::uint64_t total_ = 0;
  std::map<std::string, std::uint64_t, std::less<>> per_phase_;
  std::unordered_map<std::uint64_t, bool> answers_;  // W(lo, hi)
};

/// W(u, v) through the ledger: cached pairs are free, new pairs are charged to
/// `phase`. Throws std::invalid_argument if u == v.
bool counted_query(const PreferenceOracle& oracle, ElementId u, ElementId v,
                   QueryLedger& ledger, std::string_view phase);

/// An oracle bundled with the ledger that meters it.
class QueryContext {
 public:
  QueryContext(const PreferenceOracle& oracle, QueryLedger& ledger)
      : oracle_(&oracle), ledger_(&ledger) {}

  bool prefers(ElementId u, ElementId v, std::string_view phase) const {
    return counted_query(*oracle_, u, v, *ledger_, phase);
  }

  const PreferenceOracle& oracle() const { return *oracle_; }
  QueryLedger& ledger() const { return *ledger_; }

 private:
  const PreferenceOracle* oracle_;
  QueryLedger* ledger_;
};

/// Oracle view that charges every read to `phase` of a context's ledger, so
/// any function taking a PreferenceOracle can be metered.
class CountingOracle final : public PreferenceOracle {
 public:
  CountingOracle(const QueryContext& ctx, std::string_view phase)
      : ctx_(ctx), phase_(phase) {}

  std::size_t size() const override { return ctx_.oracle().size(); }
  bool prefers(ElementId u, ElementId v) const override {
    return ctx_.prefers(u, v, phase_);
  }

 private:
  QueryContext ctx_;
  std::string phase_;
};

}  // namespace activerank
