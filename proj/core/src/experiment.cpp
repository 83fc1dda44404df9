#include "activerank/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "activerank/exact.hpp"
#include "activerank/finalize.hpp"
#include "activerank/metrics.hpp"
#include "activerank/oracles.hpp"
#include "activerank/quicksort.hpp"
#include "activerank/serialization.hpp"

namespace activerank {

namespace {

// Full-cost diagnostics read every pair; skip them on larger instances.
constexpr std::size_t kCostReportLimit = 5000;

std::uint64_t algorithm_seed(std::uint64_t base, std::size_t run) {
  return RandomSource(base).fork(run + 1).seed();
}

std::vector<ElementId> all_elements(std::size_t n) {
  std::vector<ElementId> v(n);
  std::iota(v.begin(), v.end(), ElementId{0});
  return v;
}

template <typename T>
double median(std::vector<T> values) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  if (values.size() % 2 == 1) return static_cast<double>(values[mid]);
  return (static_cast<double>(values[mid - 1]) + static_cast<double>(values[mid])) / 2.0;
}

nlohmann::json ratio_or_null(std::uint64_t num, std::uint64_t den) {
  if (den == 0) return num == 0 ? nlohmann::json(1.0) : nlohmann::json(nullptr);
  return static_cast<double>(num) / static_cast<double>(den);
}

const char* to_string(LogArgument arg) {
  switch (arg) {
    case LogArgument::kInverseEps: return "inv_eps";
    case LogArgument::kCOverEps: return "c_over_eps";
    case LogArgument::kCOverEpsPlusTwo: return "c_over_eps_plus_2";
  }
  return "unknown";
}

LogArgument parse_log_argument(const std::string& text) {
  if (text == "inv_eps") return LogArgument::kInverseEps;
  if (text == "c_over_eps") return LogArgument::kCOverEps;
  if (text == "c_over_eps_plus_2") return LogArgument::kCOverEpsPlusTwo;
  throw std::invalid_argument("unknown log argument `" + text + "`");
}

}  // namespace

PipelineRun run_pipeline(std::span<const ElementId> elements, const QueryContext& ctx,
                         double eps, const DecomposeConfig& config, std::uint64_t seed) {
  const auto before = ctx.ledger().per_phase();
  const std::uint64_t before_total = ctx.ledger().total();
  RandomSource rng(seed);
  PipelineRun run;
  run.seed = seed;
  run.decomposition = sample_and_rank_root(elements, ctx, eps, config, rng);
  run.ranking = finalize_ranking(run.decomposition, ctx, eps, config, rng).order;
  for (const auto& [phase, count] : ctx.ledger().per_phase()) {
    const auto it = before.find(phase);
    const std::uint64_t delta = count - (it == before.end() ? 0 : it->second);
    if (delta > 0) run.new_queries[phase] = delta;
  }
  run.new_total = ctx.ledger().total() - before_total;
  return run;
}

std::size_t select_best(std::span<const Permutation> candidates, const QueryContext& ctx,
                        double eps, const DecomposeConfig& config, RandomSource& rng) {
  if (candidates.empty()) throw std::invalid_argument("no candidate rankings");
  const std::size_t n = candidates.front().size();
  if (candidates.size() == 1 || n < 2) return 0;
  const double ln_n = std::log(std::max<double>(static_cast<double>(n), 2.0));
  const auto draws = static_cast<std::size_t>(
      std::max(1.0, std::ceil(config.c_cost_sample * ln_n / std::pow(eps, 4.0))));
  const EdgeSample sample = sample_uniform_pairs(candidates.front().order(), draws, rng, "V");
  const CountingOracle w(ctx, phase::kRetry);
  std::size_t best = 0;
  double best_score = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    const double score = partial_cost(candidates[k], sample, w);
    if (score < best_score) {
      best_score = score;
      best = k;
    }
  }
  return best;
}

Mode parse_mode(const std::string& text) {
  if (text == "decompose") return Mode::kDecompose;
  if (text == "decompose+exact") return Mode::kDecomposeExact;
  if (text == "decompose+svm") return Mode::kDecomposeSvm;
  if (text == "qsort-only") return Mode::kQsortOnly;
  throw std::invalid_argument("unknown mode `" + text + "`");
}

const char* to_string(Mode mode) {
  switch (mode) {
    case Mode::kDecompose: return "decompose";
    case Mode::kDecomposeExact: return "decompose+exact";
    case Mode::kDecomposeSvm: return "decompose+svm";
    case Mode::kQsortOnly: return "qsort-only";
  }
  return "unknown";
}

OracleKind parse_oracle(const std::string& text) {
  if (text == "planted") return OracleKind::kPlanted;
  if (text == "file") return OracleKind::kFile;
  if (text == "service") return OracleKind::kService;
  throw std::invalid_argument("unknown oracle `" + text + "`");
}

const char* to_string(OracleKind kind) {
  switch (kind) {
    case OracleKind::kPlanted: return "planted";
    case OracleKind::kFile: return "file";
    case OracleKind::kService: return "service";
  }
  return "unknown";
}

void ExperimentConfig::validate() const {
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("eps must lie in (0, 1)");
  if (!(noise >= 0.0 && noise < 0.5)) throw std::invalid_argument("noise must lie in [0, 0.5)");
  if (retries == 0) throw std::invalid_argument("retries must be at least 1");
  if (oracle == OracleKind::kPlanted && n == 0) throw std::invalid_argument("n must be positive");
  if (oracle == OracleKind::kFile && tournament.empty()) {
    throw std::invalid_argument("the file oracle needs a tournament path");
  }
  if (oracle == OracleKind::kService) {
    throw std::invalid_argument("the service oracle is driven by `rank serve`");
  }
  if (mode == Mode::kDecomposeExact && n > kExactLimit && oracle == OracleKind::kPlanted) {
    throw std::invalid_argument("decompose+exact is limited to n <= " +
                                std::to_string(kExactLimit));
  }
  if (svm.dim == 0 || !(svm.c > 0.0) || !(svm.sample_scale > 0.0)) {
    throw std::invalid_argument("svm settings must be positive");
  }
  constants.validate();
}

void apply_overrides(ExperimentConfig& config, const nlohmann::json& overrides) {
  if (!overrides.is_object()) throw std::invalid_argument("config overrides must be an object");
  for (const auto& [key, value] : overrides.items()) {
    if (key == "n") config.n = value.get<std::size_t>();
    else if (key == "eps") config.eps = value.get<double>();
    else if (key == "noise") config.noise = value.get<double>();
    else if (key == "seed") config.seed = value.get<std::uint64_t>();
    else if (key == "retries") config.retries = value.get<std::size_t>();
    else if (key == "mode") config.mode = parse_mode(value.get<std::string>());
    else if (key == "oracle") config.oracle = parse_oracle(value.get<std::string>());
    else if (key == "tournament") config.tournament = value.get<std::string>();
    else if (key == "constants") from_json(value, config.constants);
    else if (key == "svm") {
      for (const auto& [k, v] : value.items()) {
        if (k == "dim") config.svm.dim = v.get<std::size_t>();
        else if (k == "c") config.svm.c = v.get<double>();
        else if (k == "feature_noise") config.svm.feature_noise = v.get<double>();
        else if (k == "iterations") config.svm.iterations = v.get<std::size_t>();
        else if (k == "sample_scale") config.svm.sample_scale = v.get<double>();
        else if (k == "log_argument") config.svm.log_argument = parse_log_argument(v.get<std::string>());
        else if (k == "features") config.svm.features = v.get<std::string>();
        else throw std::invalid_argument("unknown svm key `" + k + "`");
      }
    } else {
      throw std::invalid_argument("unknown config key `" + key + "`");
    }
  }
}

nlohmann::json to_json(const ExperimentConfig& config) {
  nlohmann::json constants;
  to_json(constants, config.constants);
  return {{"n", config.n},
          {"eps", config.eps},
          {"noise", config.noise},
          {"seed", config.seed},
          {"retries", config.retries},
          {"mode", to_string(config.mode)},
          {"oracle", to_string(config.oracle)},
          {"tournament", config.tournament.string()},
          {"constants", constants},
          {"svm",
           {{"dim", config.svm.dim},
            {"c", config.svm.c},
            {"feature_noise", config.svm.feature_noise},
            {"iterations", config.svm.iterations},
            {"sample_scale", config.svm.sample_scale},
            {"log_argument", to_string(config.svm.log_argument)},
            {"features", config.svm.features.string()}}}};
}

nlohmann::json run_experiment(const ExperimentConfig& config) {
  config.validate();
  std::unique_ptr<PreferenceOracle> oracle;
  const PlantedModel* planted = nullptr;
  if (config.oracle == OracleKind::kPlanted) {
    auto model = std::make_unique<PlantedModel>(config.n, config.noise, config.seed);
    planted = model.get();
    oracle = std::move(model);
  } else {
    oracle = std::make_unique<Tournament>(load_tournament(config.tournament));
  }
  const std::size_t n = oracle->size();
  if (config.mode == Mode::kDecomposeExact && n > kExactLimit) {
    throw std::invalid_argument("decompose+exact is limited to n <= " +
                                std::to_string(kExactLimit));
  }
  const std::vector<ElementId> elements = all_elements(n);
  QueryLedger ledger;
  const QueryContext ctx(*oracle, ledger);
  const bool report_costs = n <= kCostReportLimit;

  nlohmann::json report;
  report["config"] = to_json(config);
  report["n"] = n;
  if (planted != nullptr && report_costs) {
    report["planted_cost"] = mfast_cost(planted->sigma_star(), *oracle);
  }

  if (config.mode == Mode::kQsortOnly) {
    RandomSource rng(algorithm_seed(config.seed, 0));
    const Permutation ranking = quicksort_rank(elements, ctx, rng);
    report["ranking"] = ranking;
    if (report_costs) report["ranking_cost"] = mfast_cost(ranking, *oracle);
    report["ledger"] = ledger;
    return report;
  }

  std::vector<PipelineRun> runs;
  std::vector<Permutation> rankings;
  for (std::size_t k = 0; k < config.retries; ++k) {
    runs.push_back(run_pipeline(elements, ctx, config.eps, config.constants,
                                algorithm_seed(config.seed, k)));
    rankings.push_back(runs.back().ranking);
  }
  RandomSource select_rng(algorithm_seed(config.seed, config.retries));
  const std::size_t chosen = select_best(rankings, ctx, config.eps, config.constants, select_rng);

  nlohmann::json per_run = nlohmann::json::array();
  std::vector<std::uint64_t> costs, queries;
  nlohmann::json constants;
  to_json(constants, config.constants);
  for (const auto& run : runs) {
    nlohmann::json entry;
    to_json(entry, run.decomposition);
    entry["seed"] = run.seed;
    entry["eps"] = config.eps;
    entry["config"] = constants;
    entry["ledger"] = {{"total", run.new_total}, {"per_phase", run.new_queries}};
    entry["ranking"] = run.ranking;
    queries.push_back(run.new_total);
    if (report_costs) {
      const std::uint64_t cost = mfast_cost(run.ranking, *oracle);
      entry["ranking_cost"] = cost;
      costs.push_back(cost);
    }
    if (config.mode == Mode::kDecomposeExact) {
      const EpsGoodReport good = check_eps_good(run.decomposition.blocks, *oracle, config.eps);
      entry["exact"] = {{"respecting_opt", good.respecting_opt},
                        {"global_opt", good.global_opt},
                        {"ratio", ratio_or_null(good.respecting_opt, good.global_opt)},
                        {"local_chaos_lhs", good.local_chaos_lhs},
                        {"local_chaos_rhs", good.local_chaos_rhs},
                        {"local_chaos", good.local_chaos},
                        {"approx_optimal", good.approx_optimal},
                        {"ranking_ratio",
                         ratio_or_null(mfast_cost(run.ranking, *oracle), good.global_opt)}};
    }
    per_run.push_back(std::move(entry));
  }
  report["runs"] = per_run;
  report["selected"] = chosen;
  report["ranking"] = runs[chosen].ranking;
  report["median"] = {{"queries", median(queries)}};
  if (report_costs) {
    report["median"]["ranking_cost"] = median(costs);
    report["ranking_cost"] = costs[chosen];
  }

  if (config.mode == Mode::kDecomposeSvm) {
    FeatureMap phi;
    if (!config.svm.features.empty()) {
      phi = load_features(config.svm.features);
    } else if (planted != nullptr) {
      RandomSource feature_rng(algorithm_seed(config.seed, config.retries + 1));
      phi = planted_features(planted->sigma_star(), config.svm.dim, config.svm.feature_noise,
                             feature_rng);
    } else {
      throw std::invalid_argument("decompose+svm with a tournament file needs a feature file");
    }
    if (phi.size() != n) throw std::invalid_argument("feature map size differs from n");
    const std::uint64_t m = subsample_size(config.eps, config.svm.c, phi.dim(),
                                           config.svm.sample_scale, config.svm.log_argument);
    RandomSource svm_rng(algorithm_seed(config.seed, config.retries + 2));
    const CountingOracle w(ctx, phase::kSvm);
    const auto& blocks = runs[chosen].decomposition.blocks;
    SvmProblem problem{phi, sample_delta3(blocks, w, m, svm_rng), config.svm.c};
    const SolveResult solved = solve(problem, {config.svm.iterations, false});
    const Permutation ranking = extract_permutation(solved.w, phi);
    nlohmann::json svm = {{"kind", to_string(SvmKind::kSvm3)},
                          {"w", solved.w},
                          {"c", config.svm.c},
                          {"objective", solved.objective},
                          {"subsample_size", m},
                          {"ranking", ranking}};
    if (report_costs) {
      svm["ranking_cost"] = mfast_cost(ranking, *oracle);
      const SvmProblem full{phi, svm2_constraints(blocks, *oracle), config.svm.c};
      svm["svm2_objective"] = objective_value(full, solved.w);
    }
    report["svm"] = svm;
  }
  report["ledger"] = ledger;
  return report;
}

SweepResult scaling_sweep(std::span<const std::size_t> sizes, double eps, double noise,
                          std::size_t seeds, std::uint64_t base_seed,
                          const DecomposeConfig& constants) {
  if (!std::is_sorted(sizes.begin(), sizes.end())) {
    throw std::invalid_argument("sweep sizes must be ascending");
  }
  DecomposeConfig config = constants;
  config.c_final = 0.0;
  SweepResult result;
  std::vector<double> medians;
  for (std::size_t n : sizes) {
    const std::vector<ElementId> elements = all_elements(n);
    std::vector<std::uint64_t> totals;
    for (std::size_t s = 0; s < seeds; ++s) {
      const std::uint64_t seed = base_seed + s;
      const PlantedModel model(n, noise, seed);
      QueryLedger ledger;
      const QueryContext ctx(model, ledger);
      run_pipeline(elements, ctx, eps, config, algorithm_seed(seed, 0));
      result.rows.push_back({n, seed, ledger.total(), ledger.phase_count(phase::kQuickSort),
                             ledger.phase_count(phase::kEnsemble),
                             ledger.phase_count(phase::kSmallBlock)});
      totals.push_back(ledger.total());
    }
    medians.push_back(median(totals));
  }
  for (std::size_t k = 1; k < medians.size(); ++k) {
    result.doubling_ratios.push_back(medians[k - 1] > 0 ? medians[k] / medians[k - 1] : 0.0);
  }
  return result;
}

void write_sweep_csv(std::ostream& out, std::span<const std::size_t> sizes,
                     const SweepResult& result) {
  out << "n,seed,total_queries,qsort_queries,ensemble_queries,smallblock_queries\n";
  for (const auto& r : result.rows) {
    out << r.n << ',' << r.seed << ',' << r.total << ',' << r.qsort << ',' << r.ensemble
        << ',' << r.smallblock << '\n';
  }
  for (std::size_t k = 0; k < result.doubling_ratios.size(); ++k) {
    out << "ratio:" << sizes[k + 1] << '/' << sizes[k] << ",," << result.doubling_ratios[k]
        << ",,,\n";
  }
}

nlohmann::json run_audit(const AuditConfig& config) {
  if (config.n > kExactLimit) {
    throw std::invalid_argument("audit is limited to n <= " + std::to_string(kExactLimit));
  }
  if (config.seeds == 0 || config.group_size == 0) {
    throw std::invalid_argument("audit needs at least one seed and group member");
  }
  const std::vector<ElementId> elements = all_elements(config.n);
  std::size_t single_pass = 0, group_pass = 0, chaos_pass = 0;
  std::vector<double> regrets;
  nlohmann::json per_seed = nlohmann::json::array();

  for (std::size_t s = 0; s < config.seeds; ++s) {
    const std::uint64_t seed = config.base_seed + s;
    const Tournament t = make_planted(config.n, config.noise, seed);

    QueryLedger ledger;
    const QueryContext ctx(t, ledger);
    const PipelineRun run =
        run_pipeline(elements, ctx, config.eps, config.constants, algorithm_seed(seed, 0));
    const EpsGoodReport good = check_eps_good(run.decomposition.blocks, t, config.eps);
    single_pass += good.approx_optimal ? 1 : 0;
    chaos_pass += good.local_chaos ? 1 : 0;
    const std::uint64_t ranking_cost = mfast_cost(run.ranking, t);
    regrets.push_back(good.global_opt == 0
                          ? (ranking_cost == 0 ? 1.0 : std::numeric_limits<double>::infinity())
                          : static_cast<double>(ranking_cost) /
                                static_cast<double>(good.global_opt));

    // Retries rerun the algorithm on the same instance with fresh seeds.
    QueryLedger group_ledger;
    const QueryContext group_ctx(t, group_ledger);
    std::vector<PipelineRun> group;
    std::vector<Permutation> rankings;
    for (std::size_t k = 0; k < config.group_size; ++k) {
      group.push_back(run_pipeline(elements, group_ctx, config.eps, config.constants,
                                   algorithm_seed(seed, 100 + k)));
      rankings.push_back(group.back().ranking);
    }
    RandomSource select_rng(algorithm_seed(seed, 99));
    const std::size_t chosen =
        select_best(rankings, group_ctx, config.eps, config.constants, select_rng);
    const bool group_ok =
        check_eps_good(group[chosen].decomposition.blocks, t, config.eps).approx_optimal;
    group_pass += group_ok ? 1 : 0;

    per_seed.push_back({{"seed", seed},
                        {"blocks", run.decomposition.blocks},
                        {"respecting_opt", good.respecting_opt},
                        {"global_opt", good.global_opt},
                        {"approx_optimal", good.approx_optimal},
                        {"local_chaos", good.local_chaos},
                        {"ranking_cost", ranking_cost},
                        {"group_approx_optimal", group_ok}});
  }

  // SVM1 slack bound on uniformly random tournaments and weight vectors.
  std::size_t violations = 0, checks = 0;
  for (std::size_t s = 0; s < config.seeds; ++s) {
    RandomSource rng(algorithm_seed(config.base_seed + s, 7));
    const Tournament t = Tournament::random(config.n, rng);
    const FeatureMap phi = planted_features(Permutation::identity(config.n), 5, 1.0, rng);
    const std::uint64_t opt = brute_force_mfast(t).cost;
    const SvmProblem problem{phi, svm1_constraints(t), 1.0};
    for (std::size_t k = 0; k < config.probe_weights; ++k) {
      std::vector<double> w(phi.dim());
      for (double& x : w) x = rng.normal();
      const double len = std::sqrt(std::inner_product(w.begin(), w.end(), w.begin(), 0.0));
      const double radius = rng.uniform01();
      for (double& x : w) x *= len > 0 ? radius / len : 0.0;
      ++checks;
      if (objective_value(problem, w) < static_cast<double>(opt)) ++violations;
    }
  }

  const auto fraction = [&](std::size_t k) {
    return static_cast<double>(k) / static_cast<double>(config.seeds);
  };
  return {{"n", config.n},
          {"eps", config.eps},
          {"noise", config.noise},
          {"seeds", config.seeds},
          {"group_size", config.group_size},
          {"approx_optimal_rate", fraction(single_pass)},
          {"group_approx_optimal_rate", fraction(group_pass)},
          {"local_chaos_rate", fraction(chaos_pass)},
          {"median_ranking_ratio", median(regrets)},
          {"slack_bound", {{"checks", checks}, {"violations", violations}}},
          {"per_seed", per_seed}};
}

}  // namespace activerank
