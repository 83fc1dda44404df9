#include "activerank/config.hpp"

#include <stdexcept>
#include <string>

namespace activerank {

DecomposeConfig DecomposeConfig::human_scale() {
  DecomposeConfig c;
  c.c_cost_sample = 0.02;
  c.c_final = 0.0;
  return c;
}

void DecomposeConfig::validate() const {
  const auto positive = [](double v, const char* name) {
    if (!(v > 0.0)) throw std::invalid_argument(std::string(name) + " must be positive");
  };
  positive(c_ens, "c_ens");
  positive(c_threshold, "c_threshold");
  positive(c_chaos, "c_chaos");
  positive(c_cost_sample, "c_cost_sample");
  positive(c_small, "c_small");
  positive(c_guard, "c_guard");
  if (!(success_fraction > 0.0 && success_fraction <= 1.0)) {
    throw std::invalid_argument("success_fraction must lie in (0, 1]");
  }
  if (!(c_final >= 0.0)) throw std::invalid_argument("c_final must be non-negative");
}

void to_json(nlohmann::json& j, const DecomposeConfig& c) {
  j = {{"c_ens", c.c_ens},
       {"c_threshold", c.c_threshold},
       {"c_chaos", c.c_chaos},
       {"c_cost_sample", c.c_cost_sample},
       {"c_small", c.c_small},
       {"c_guard", c.c_guard},
       {"success_fraction", c.success_fraction},
       {"c_final", c.c_final},
       {"audit_moves", c.audit_moves}};
}

void from_json(const nlohmann::json& j, DecomposeConfig& c) {
  if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key == "c_ens") c.c_ens = value.get<double>();
    else if (key == "c_threshold") c.c_threshold = value.get<double>();
    else if (key == "c_chaos") c.c_chaos = value.get<double>();
    else if (key == "c_cost_sample") c.c_cost_sample = value.get<double>();
    else if (key == "c_small") c.c_small = value.get<double>();
    else if (key == "c_guard") c.c_guard = value.get<double>();
    else if (key == "success_fraction") c.success_fraction = value.get<double>();
    else if (key == "c_final") c.c_final = value.get<double>();
    else if (key == "audit_moves") c.audit_moves = value.get<bool>();
    else throw std::invalid_argument("unknown config key `" + key + "`");
  }
}

}  // namespace activerank
