#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "activerank/config.hpp"
#include "activerank/decompose.hpp"
#include "activerank/query.hpp"
#include "activerank/svm.hpp"

namespace activerank {

/// One decomposition plus final ranking with its own random stream.
struct PipelineRun {
  std::uint64_t seed = 0;
  Decomposition decomposition;
  Permutation ranking;
  /// Labels first read by this run, per phase (earlier runs sharing the
  /// ledger may already have paid for some of its pairs).
  std::map<std::string, std::uint64_t> new_queries;
  std::uint64_t new_total = 0;
};

PipelineRun run_pipeline(std::span<const ElementId> elements, const QueryContext& ctx,
                         double eps, const DecomposeConfig& config, std::uint64_t seed);

/// Index of the candidate ranking with the lowest estimated cost on one
/// shared sample of ceil(c_cost_sample * eps^-4 * ln n) uniform pairs
/// (phase::kRetry); ties go to the lower index. Throws on an empty list.
std::size_t select_best(std::span<const Permutation> candidates, const QueryContext& ctx,
                        double eps, const DecomposeConfig& config, RandomSource& rng);

enum class Mode { kDecompose, kDecomposeExact, kDecomposeSvm, kQsortOnly };
enum class OracleKind { kPlanted, kFile, kService };

Mode parse_mode(const std::string& text);
const char* to_string(Mode mode);
OracleKind parse_oracle(const std::string& text);
const char* to_string(OracleKind kind);

struct SvmSettings {
  std::size_t dim = 5;
  double c = 1.0;
  double feature_noise = 0.3;
  std::size_t iterations = 10000;
  double sample_scale = 1.0;
  LogArgument log_argument = LogArgument::kCOverEpsPlusTwo;
  std::filesystem::path features;  // empty: planted features
};

struct ExperimentConfig {
  std::size_t n = 100;
  double eps = 0.3;
  double noise = 0.2;
  std::uint64_t seed = 1;
  std::size_t retries = 5;  // independent runs on the same instance
  Mode mode = Mode::kDecompose;
  OracleKind oracle = OracleKind::kPlanted;
  std::filesystem::path tournament;
  DecomposeConfig constants;
  SvmSettings svm;

  /// Throws std::invalid_argument on out-of-range values.
  void validate() const;
};

/// Applies a JSON object of overrides: experiment keys (n, eps, noise, seed,
/// retries, mode, oracle, tournament), "constants": {...} and "svm": {...}.
void apply_overrides(ExperimentConfig& config, const nlohmann::json& overrides);
nlohmann::json to_json(const ExperimentConfig& config);

/// Runs the configured pipeline and returns the report.
nlohmann::json run_experiment(const ExperimentConfig& config);

struct SweepRow {
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::uint64_t total = 0;
  std::uint64_t qsort = 0;
  std::uint64_t ensemble = 0;
  std::uint64_t smallblock = 0;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  /// Median total of each n over the median total of the previous n.
  std::vector<double> doubling_ratios;
};

/// Decomposition plus exact small-block ordering on planted instances, one
/// fresh ledger per (n, seed). Seeds are base_seed, base_seed+1, ...
SweepResult scaling_sweep(std::span<const std::size_t> sizes, double eps, double noise,
                          std::size_t seeds, std::uint64_t base_seed,
                          const DecomposeConfig& constants);

/// CSV with header n,seed,total_queries,qsort_queries,ensemble_queries,
/// smallblock_queries, then one `ratio:<n>/<previous n>` row per consecutive
/// pair of sizes carrying the ratio in the total_queries column.
void write_sweep_csv(std::ostream& out, std::span<const std::size_t> sizes,
                     const SweepResult& result);

struct AuditConfig {
  std::size_t n = 10;
  double eps = 0.3;
  double noise = 0.3;
  std::size_t seeds = 50;
  std::size_t group_size = 5;
  std::uint64_t base_seed = 1;
  std::size_t probe_weights = 50;
  DecomposeConfig constants;
};

/// Brute-force audit on small planted instances: approximate optimality of
/// single runs and of best-of-group retries, local chaos, regret of the final
/// ranking, and the SVM1 slack lower bound on random weight vectors.
nlohmann::json run_audit(const AuditConfig& config);

}  // namespace activerank
