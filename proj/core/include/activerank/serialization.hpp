#pragma once

#include <nlohmann/json.hpp>

#include "activerank/query.hpp"
#include "activerank/types.hpp"

namespace activerank {

// Permutation <-> JSON array of element ids in position order.
void to_json(nlohmann::json& j, const Permutation& pi);
void from_json(const nlohmann::json& j, Permutation& pi);

// OrderedDecomposition <-> JSON array of arrays, block order preserved.
void to_json(nlohmann::json& j, const OrderedDecomposition& d);
void from_json(const nlohmann::json& j, OrderedDecomposition& d);

// Ledger summary: {"total": n, "per_phase": {"qsort": n, ...}}.
void to_json(nlohmann::json& j, const QueryLedger& ledger);

}  // namespace activerank
