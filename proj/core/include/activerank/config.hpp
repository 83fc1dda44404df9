#pragma once

#include <cstdint>

#include <nlohmann/json.hpp>

namespace activerank {

/// Named constants for the asymptotic bounds of the decomposition algorithm.
/// Logarithms are natural except for window scales, which are powers of two.
struct DecomposeConfig {
  /// Sample ensemble cell size m = ceil(c_ens * eps^-2 * ln^2 n).
  double c_ens = 4.0;
  /// Lowest window scale B = max(0, ceil(log2(c_threshold * eps * N / ln n))).
  double c_threshold = 1.0;
  /// A block is declared chaotic when its estimated cost reaches
  /// c_chaos * eps^2 * N^2.
  double c_chaos = 0.25;
  /// Chaos-test sample size ceil(c_cost_sample * eps^-4 * ln n).
  double c_cost_sample = 4.0;
  /// LocalImprove returns immediately when N <= c_small * eps^-3 * ln^3 n.
  double c_small = 1.0;
  /// LocalImprove stops after ceil(c_guard * eps^-2 * N * ln^2 n) moves.
  double c_guard = 10.0;
  /// A cell is successful at (u, j) when at least this fraction of its
  /// entries falls inside the move interval.
  double success_fraction = 0.125;
  /// Block-ordering sample size ceil(c_final * eps^-6 * n * ln n) drawn over
  /// the big blocks when producing a final ranking; 0 keeps the order the
  /// decomposition produced.
  double c_final = 1.0;
  /// Recompute the exact TestMove of every applied move (reads the oracle
  /// without charging the ledger).
  bool audit_moves = false;

  /// Constants for interactive sessions with a person answering (n up to a
  /// few hundred): chaos tests and final block ordering are kept cheap.
  static DecomposeConfig human_scale();

  /// Throws std::invalid_argument if any constant is out of range.
  void validate() const;
};

void to_json(nlohmann::json& j, const DecomposeConfig& c);
/// Missing keys keep their current values; unknown keys are rejected.
void from_json(const nlohmann::json& j, DecomposeConfig& c);

}  // namespace activerank
