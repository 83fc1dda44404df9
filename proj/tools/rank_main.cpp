#include <csignal>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "activerank/experiment.hpp"
#include "activerank/http_service.hpp"
#include "activerank/session.hpp"

using namespace activerank;

namespace {

HttpService* g_service = nullptr;

void on_signal(int) {
  if (g_service != nullptr) g_service->stop();
}

nlohmann::json read_config(const std::string& path) {
  if (path.empty()) return nlohmann::json::object();
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config " + path);
  return nlohmann::json::parse(in);
}

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("cannot write " + out_path);
  out << text;
}

std::optional<std::uint64_t> env_seed() {
  const char* value = std::getenv("RANK_SEED");
  if (value == nullptr || *value == '\0') return std::nullopt;
  return std::stoull(value);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Active-learning ranking from pairwise preferences"};
  app.require_subcommand(1);

  std::string config_path, out_path;
  std::size_t n = 0;
  double eps = 0, noise = -1;
  std::uint64_t seed = 0;
  std::string mode, oracle, tournament;
  std::size_t retries = 0;

  auto* run = app.add_subcommand("run", "Rank one instance and print a JSON report");
  run->add_option("--n", n, "Number of elements (planted oracle)");
  run->add_option("--eps", eps, "Approximation parameter in (0, 1)");
  run->add_option("--noise", noise, "Flip probability of the planted oracle");
  run->add_option("--seed", seed, "Instance seed (RANK_SEED overrides)");
  run->add_option("--mode", mode, "decompose | decompose+exact | decompose+svm | qsort-only");
  run->add_option("--oracle", oracle, "planted | file");
  run->add_option("--tournament", tournament, "Tournament file for --oracle file");
  run->add_option("--retries", retries, "Independent runs; the best estimate is reported");
  run->add_option("--config", config_path, "JSON file of overrides");
  run->add_option("--out", out_path, "Output path (default stdout)");

  std::vector<std::size_t> sizes{1000, 2000, 4000, 8000};
  std::size_t sweep_seeds = 5;
  auto* sweep = app.add_subcommand("sweep", "Query counts over doubling n as CSV");
  sweep->add_option("--sizes", sizes, "Values of n")->delimiter(',');
  sweep->add_option("--seeds", sweep_seeds, "Seeds per n");
  sweep->add_option("--eps", eps, "Approximation parameter in (0, 1)");
  sweep->add_option("--noise", noise, "Flip probability of the planted oracle");
  sweep->add_option("--seed", seed, "First seed (RANK_SEED overrides)");
  sweep->add_option("--config", config_path, "JSON file of constant overrides");
  sweep->add_option("--out", out_path, "Output path (default stdout)");

  std::string host = "127.0.0.1", data_dir = "sessions", static_dir;
  int port = 8080;
  auto* serve = app.add_subcommand("serve", "Run the HTTP labeling service");
  serve->add_option("--host", host, "Listen address");
  serve->add_option("--port", port, "Listen port");
  serve->add_option("--data-dir", data_dir, "Directory of session logs");
  serve->add_option("--static-dir", static_dir, "Static files served at /");
  serve->add_option("--eps", eps, "Default eps for new sessions");
  serve->add_option("--config", config_path, "JSON file of constant overrides");

  AuditConfig audit_config;
  auto* audit = app.add_subcommand("audit", "Brute-force checks on small instances");
  audit->add_option("--n", n, "Number of elements (at most 20)");
  audit->add_option("--eps", eps, "Approximation parameter in (0, 1)");
  audit->add_option("--noise", noise, "Flip probability of the planted oracle");
  audit->add_option("--seed", seed, "First seed (RANK_SEED overrides)");
  audit->add_option("--seeds", audit_config.seeds, "Number of instances");
  audit->add_option("--group-size", audit_config.group_size, "Runs per retry group");
  audit->add_option("--config", config_path, "JSON file of constant overrides");
  audit->add_option("--out", out_path, "Output path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    const nlohmann::json overrides = read_config(config_path);
    if (const auto s = env_seed()) seed = *s;

    if (*run) {
      ExperimentConfig config;
      apply_overrides(config, overrides);
      if (n > 0) config.n = n;
      if (eps > 0) config.eps = eps;
      if (noise >= 0) config.noise = noise;
      if (seed > 0 || env_seed()) config.seed = seed;
      if (!mode.empty()) config.mode = parse_mode(mode);
      if (!oracle.empty()) config.oracle = parse_oracle(oracle);
      if (!tournament.empty()) config.tournament = tournament;
      if (retries > 0) config.retries = retries;
      emit(out_path, run_experiment(config).dump(2) + "\n");
    } else if (*sweep) {
      DecomposeConfig constants;
      from_json(overrides, constants);
      const SweepResult result = scaling_sweep(sizes, eps > 0 ? eps : 0.3,
                                               noise >= 0 ? noise : 0.2, sweep_seeds,
                                               seed > 0 ? seed : 1, constants);
      std::ostringstream csv;
      write_sweep_csv(csv, sizes, result);
      emit(out_path, csv.str());
    } else if (*serve) {
      SessionOptions options;
      from_json(overrides, options.constants);
      if (eps > 0) options.default_eps = eps;
      SessionManager sessions(data_dir, options);
      HttpService service(sessions, static_dir);
      const int bound = service.bind(host, port);
      if (bound < 0) {
        std::cerr << "rank: cannot listen on " << host << ':' << port << '\n';
        return 1;
      }
      g_service = &service;
      std::signal(SIGINT, on_signal);
      std::signal(SIGTERM, on_signal);
      std::cerr << "rank: serving on http://" << host << ':' << bound << '\n';
      service.serve();
      g_service = nullptr;
    } else if (*audit) {
      from_json(overrides, audit_config.constants);
      if (n > 0) audit_config.n = n;
      if (eps > 0) audit_config.eps = eps;
      if (noise >= 0) audit_config.noise = noise;
      if (seed > 0 || env_seed()) audit_config.base_seed = seed;
      emit(out_path, run_audit(audit_config).dump(2) + "\n");
    }
  } catch (const std::exception& e) {
    std::cerr << "rank: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
