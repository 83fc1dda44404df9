#include "activerank/svm.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

#include "activerank/exact.hpp"

namespace activerank {

namespace {

constexpr double kNormSlack = 1e-9;

double norm(std::span<const double> v) {
  return std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
}

std::vector<Constraint> cross_block_pairs(const OrderedDecomposition& d) {
  std::vector<Constraint> out;
  for (std::size_t i = 0; i < d.block_count(); ++i) {
    for (std::size_t j = i + 1; j < d.block_count(); ++j) {
      for (ElementId u : d.block(i)) {
        for (ElementId v : d.block(j)) out.push_back({u, v, 1.0});
      }
    }
  }
  return out;
}

std::vector<double> scores(const SvmProblem& p, std::span<const double> w) {
  if (w.size() != p.phi.dim()) throw std::invalid_argument("weight vector has the wrong dimension");
  if (norm(w) > p.c * (1.0 + kNormSlack)) {
    throw std::invalid_argument("weight vector outside the norm ball");
  }
  std::vector<double> s(p.phi.size());
  for (ElementId u = 0; u < s.size(); ++u) s[u] = p.phi.score(u, w);
  return s;
}

template <typename Fn>
void for_each_constraint(const ConstraintSet& cs, Fn&& fn) {
  for (const auto& c : cs.ordered) fn(c);
  for (const auto& c : cs.within) fn(c);
}

}  // namespace

FeatureMap::FeatureMap(std::vector<std::vector<double>> rows) : n_(rows.size()) {
  d_ = rows.empty() ? 0 : rows.front().size();
  data_.reserve(n_ * d_);
  for (std::size_t u = 0; u < rows.size(); ++u) {
    if (rows[u].size() != d_) throw std::invalid_argument("feature rows differ in dimension");
    if (norm(rows[u]) > 1.0 + kNormSlack) {
      throw std::invalid_argument("feature vector of element " + std::to_string(u) +
                                  " has norm above 1");
    }
    data_.insert(data_.end(), rows[u].begin(), rows[u].end());
  }
}

double FeatureMap::score(ElementId u, std::span<const double> w) const {
  const auto r = row(u);
  return std::inner_product(r.begin(), r.end(), w.begin(), 0.0);
}

FeatureMap planted_features(const Permutation& order, std::size_t d, double noise,
                            RandomSource& rng) {
  if (d == 0) throw std::invalid_argument("feature dimension must be positive");
  const std::size_t n = order.size();
  std::vector<std::vector<double>> rows(n, std::vector<double>(d, 0.0));
  double longest = 0.0;
  for (ElementId u = 0; u < n; ++u) {
    rows[u][0] = -static_cast<double>(order.rank_of(u)) / static_cast<double>(n);
    for (std::size_t k = 1; k < d; ++k) rows[u][k] = noise * rng.normal();
    longest = std::max(longest, norm(rows[u]));
  }
  if (longest > 0.0) {
    for (auto& r : rows) {
      for (double& x : r) x /= longest;
    }
  }
  return FeatureMap(std::move(rows));
}

void to_json(nlohmann::json& j, const FeatureMap& phi) {
  j = nlohmann::json::object();
  for (ElementId u = 0; u < phi.size(); ++u) {
    const auto r = phi.row(u);
    j[std::to_string(u)] = std::vector<double>(r.begin(), r.end());
  }
}

void from_json(const nlohmann::json& j, FeatureMap& phi) {
  if (!j.is_object()) throw std::invalid_argument("feature file must be a JSON object");
  std::map<std::size_t, std::vector<double>> by_id;
  for (const auto& [key, value] : j.items()) {
    std::size_t used = 0;
    const unsigned long id = std::stoul(key, &used);
    if (used != key.size()) throw std::invalid_argument("feature key `" + key + "` is not an id");
    by_id[id] = value.get<std::vector<double>>();
  }
  std::vector<std::vector<double>> rows;
  for (auto& [id, row] : by_id) {
    if (id != rows.size()) throw std::invalid_argument("feature ids must be 0..n-1");
    rows.push_back(std::move(row));
  }
  phi = FeatureMap(std::move(rows));
}

FeatureMap load_features(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open feature file " + path.string());
  return nlohmann::json::parse(in).get<FeatureMap>();
}

const char* to_string(SvmKind kind) {
  switch (kind) {
    case SvmKind::kSvm1: return "svm1";
    case SvmKind::kSvm2: return "svm2";
    case SvmKind::kSvm3: return "svm3";
  }
  return "unknown";
}

ConstraintSet svm1_constraints(const PreferenceOracle& w) {
  ConstraintSet cs;
  cs.kind = SvmKind::kSvm1;
  const auto n = static_cast<ElementId>(w.size());
  for (ElementId u = 0; u < n; ++u) {
    for (ElementId v = u + 1; v < n; ++v) {
      cs.ordered.push_back(w.prefers(u, v) ? Constraint{u, v, 1.0} : Constraint{v, u, 1.0});
    }
  }
  return cs;
}

ConstraintSet svm2_constraints(const OrderedDecomposition& d, const PreferenceOracle& w) {
  ConstraintSet cs;
  cs.kind = SvmKind::kSvm2;
  cs.ordered = cross_block_pairs(d);
  for (const auto& block : d.blocks()) {
    for (std::size_t a = 0; a < block.size(); ++a) {
      for (std::size_t b = a + 1; b < block.size(); ++b) {
        const ElementId u = block[a], v = block[b];
        cs.within.push_back(w.prefers(u, v) ? Constraint{u, v, 1.0} : Constraint{v, u, 1.0});
      }
    }
  }
  return cs;
}

ConstraintSet sample_delta3(const OrderedDecomposition& d, const PreferenceOracle& w,
                            std::uint64_t m, RandomSource& rng) {
  ConstraintSet cs;
  cs.kind = SvmKind::kSvm3;
  cs.ordered = cross_block_pairs(d);
  cs.draws = m;
  std::vector<double> weights;
  double within_pairs = 0.0;
  for (const auto& block : d.blocks()) {
    weights.push_back(static_cast<double>(pairs_of(block.size())));
    within_pairs += weights.back();
  }
  if (within_pairs == 0.0 || m == 0) return cs;

  std::discrete_distribution<std::size_t> pick(weights.begin(), weights.end());
  std::map<std::pair<ElementId, ElementId>, std::uint64_t> counts;
  for (std::uint64_t t = 0; t < m; ++t) {
    const auto& block = d.block(pick(rng.engine()));
    const std::size_t a = rng.index(block.size());
    std::size_t b = rng.index(block.size() - 1);
    if (b >= a) ++b;
    ++counts[{std::min(block[a], block[b]), std::max(block[a], block[b])}];
  }
  const double scale = within_pairs / static_cast<double>(m);
  for (const auto& [pair, count] : counts) {
    const auto [u, v] = pair;
    const double weight = scale * static_cast<double>(count);
    cs.within.push_back(w.prefers(u, v) ? Constraint{u, v, weight}
                                        : Constraint{v, u, weight});
  }
  return cs;
}

double objective_value(const SvmProblem& p, std::span<const double> w) {
  const std::vector<double> s = scores(p, w);
  double total = 0.0;
  for_each_constraint(p.constraints, [&](const Constraint& c) {
    total += c.weight * std::max(0.0, 1.0 - s[c.before] + s[c.after]);
  });
  return total;
}

std::vector<double> subgradient(const SvmProblem& p, std::span<const double> w) {
  const std::vector<double> s = scores(p, w);
  std::vector<double> g(p.phi.dim(), 0.0);
  for_each_constraint(p.constraints, [&](const Constraint& c) {
    if (1.0 - s[c.before] + s[c.after] <= 0.0) return;
    const auto a = p.phi.row(c.before);
    const auto b = p.phi.row(c.after);
    for (std::size_t k = 0; k < g.size(); ++k) g[k] += c.weight * (b[k] - a[k]);
  });
  return g;
}

SolveResult solve(const SvmProblem& p, const SolveOptions& options) {
  std::vector<double> w(p.phi.dim(), 0.0);
  SolveResult result{w, objective_value(p, w), {}};
  for (std::size_t t = 1; t <= options.iterations; ++t) {
    const std::vector<double> g = subgradient(p, w);
    const double g_norm = norm(g);
    if (g_norm == 0.0) break;
    const double step = p.c / std::sqrt(static_cast<double>(t));
    for (std::size_t k = 0; k < w.size(); ++k) w[k] -= step * g[k] / g_norm;
    const double w_norm = norm(w);
    if (w_norm > p.c) {
      for (double& x : w) x *= p.c / w_norm;
    }
    const double value = objective_value(p, w);
    if (options.record_iterates) result.iterates.push_back(w);
    if (value < result.objective) {
      result.objective = value;
      result.w = w;
    }
  }
  return result;
}

Permutation extract_permutation(std::span<const double> w, const FeatureMap& phi) {
  std::vector<ElementId> order(phi.size());
  std::iota(order.begin(), order.end(), ElementId{0});
  std::vector<double> s(phi.size());
  for (ElementId u = 0; u < s.size(); ++u) s[u] = phi.score(u, w);
  std::stable_sort(order.begin(), order.end(),
                   [&](ElementId a, ElementId b) { return s[a] > s[b]; });
  return Permutation(std::move(order));
}

SlackBoundReport verify_slack_lower_bound(std::span<const double> w, const FeatureMap& phi,
                                          const PreferenceOracle& w_labels) {
  const std::size_t n = w_labels.size();
  if (n > kExactLimit) {
    throw std::invalid_argument("slack bound audit limited to " + std::to_string(kExactLimit) +
                                " elements");
  }
  if (phi.size() != n) throw std::invalid_argument("feature map and labels differ in size");
  SlackBoundReport report;
  const SvmProblem problem{phi, svm1_constraints(w_labels),
                           std::max(1.0, norm(w))};
  report.f1 = objective_value(problem, w);
  report.optimal_cost = brute_force_mfast(w_labels).cost;
  for (ElementId a = 0; a < n; ++a) {
    for (ElementId b = a + 1; b < n; ++b) {
      for (ElementId c = b + 1; c < n; ++c) {
        const bool ab = w_labels.prefers(a, b);
        const bool bc = w_labels.prefers(b, c);
        const bool ca = w_labels.prefers(c, a);
        if (ab == bc && bc == ca) ++report.cyclic_triangles;
      }
    }
  }
  report.holds = report.f1 >= static_cast<double>(report.optimal_cost);
  return report;
}

std::uint64_t subsample_size(double eps, double c, std::size_t d, double scale,
                             LogArgument arg) {
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("eps must lie in (0, 1)");
  if (!(c > 0.0)) throw std::invalid_argument("norm bound must be positive");
  double log_term = 0.0;
  switch (arg) {
    case LogArgument::kInverseEps: log_term = std::log(1.0 / eps); break;
    case LogArgument::kCOverEps: log_term = std::log(c / eps); break;
    case LogArgument::kCOverEpsPlusTwo: log_term = std::log(c / eps + 2.0); break;
  }
  if (!(log_term > 0.0)) throw std::invalid_argument("log term of the sample size is not positive");
  const double m = scale * std::pow(eps, -6.0) * (1.0 + 2.0 * c) * (1.0 + 2.0 * c) *
                   static_cast<double>(d) * log_term;
  return static_cast<std::uint64_t>(std::ceil(m));
}

}  // namespace activerank
