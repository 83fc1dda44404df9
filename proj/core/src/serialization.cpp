#include "activerank/serialization.hpp"

namespace activerank {

void to_json(nlohmann::json& j, const Permutation& pi) { j = pi.order(); }

void from_json(const nlohmann::json& j, Permutation& pi) {
  pi = Permutation(j.get<std::vector<ElementId>>());
}

void to_json(nlohmann::json& j, const OrderedDecomposition& d) { j = d.blocks(); }

void from_json(const nlohmann::json& j, OrderedDecomposition& d) {
  d = OrderedDecomposition(j.get<std::vector<std::vector<ElementId>>>());
}

void to_json(nlohmann::json& j, const QueryLedger& ledger) {
  nlohmann::json phases = nlohmann::json::object();
  for (const auto& [name, count] : ledger.per_phase()) phases[name] = count;
  j = {{"total", ledger.total()}, {"per_phase", phases}};
}

}  // namespace activerank
