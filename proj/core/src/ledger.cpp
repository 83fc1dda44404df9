#include <stdexcept>
#include <string>

#include "activerank/query.hpp"

namespace activerank {

std::optional<bool> QueryLedger::cached(ElementId u, ElementId v) const {
  const auto it = answers_.find(key(u, v));
  if (it == answers_.end()) return std::nullopt;
  return u < v ? it->second : !it->second;
}

void QueryLedger::record(ElementId u, ElementId v, bool u_preferred,
                         std::string_view phase) {
  const bool lo_preferred = u < v ? u_preferred : !u_preferred;
  if (!answers_.emplace(key(u, v), lo_preferred).second) return;
  ++total_;
  auto it = per_phase_.find(phase);
  if (it == per_phase_.end()) it = per_phase_.emplace(std::string(phase), 0).first;
  ++it->second;
}

std::uint64_t QueryLedger::phase_count(std::string_view phase) const {
  const auto it = per_phase_.find(phase);
  return it == per_phase_.end() ? 0 : it->second;
}

bool counted_query(const PreferenceOracle& oracle, ElementId u, ElementId v,
                   QueryLedger& ledger, std::string_view phase) {
  if (u == v) {
    throw std::invalid_argument("preference query on identical elements " +
                                std::to_string(u));
  }
  if (const auto hit = ledger.cached(u, v)) return *hit;
  const bool answer = oracle.prefers(u, v);
  ledger.record(u, v, answer, phase);
  return answer;
}

}  // namespace activerank
