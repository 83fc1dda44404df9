#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "activerank/query.hpp"
#include "activerank/random.hpp"
#include "activerank/types.hpp"

namespace activerank {

/// Feature vectors phi(u) of a common dimension, each of Euclidean norm at
/// most 1.
class FeatureMap {
 public:
  FeatureMap() = default;

  /// Throws std::invalid_argument on ragged rows or a row of norm above 1.
  explicit FeatureMap(std::vector<std::vector<double>> rows);

  std::size_t size() const { return n_; }
  std::size_t dim() const { return d_; }
  std::span<const double> row(ElementId u) const {
    return {data_.data() + std::size_t{u} * d_, d_};
  }

  /// <phi(u), w>
  double score(ElementId u, std::span<const double> w) const;

 private:
  std::size_t n_ = 0;
  std::size_t d_ = 0;
  std::vector<double> data_;
};

/// Experiment features: coordinate 0 holds -rank(u)/n under `order`, the
/// remaining d-1 coordinates Gaussian noise of scale `noise`; all rows are
/// then scaled by one common factor so the longest has norm 1.
FeatureMap planted_features(const Permutation& order, std::size_t d, double noise,
                            RandomSource& rng);

/// Feature file: {"<id>": [floats], ...} covering ids 0..n-1.
FeatureMap load_features(const std::filesystem::path& path);
void to_json(nlohmann::json& j, const FeatureMap& phi);
void from_json(const nlohmann::json& j, FeatureMap& phi);

enum class SvmKind { kSvm1, kSvm2, kSvm3 };
const char* to_string(SvmKind kind);

/// Hinge term weight * max(0, 1 - score(before) + score(after)).
struct Constraint {
  ElementId before;
  ElementId after;
  double weight;
};

struct ConstraintSet {
  SvmKind kind = SvmKind::kSvm1;
  /// SVM1: every W-positive pair. SVM2/SVM3: cross-block pairs in block order.
  std::vector<Constraint> ordered;
  /// SVM2: every within-block W-positive pair. SVM3: the distinct pairs of
  /// the subsample, each weighted by multiplicity * sum_i C(n_i,2) / M.
  std::vector<Constraint> within;
  std::uint64_t draws = 0;  // M for SVM3
};

/// All W-positive ordered pairs; reads every pair of w.
ConstraintSet svm1_constraints(const PreferenceOracle& w);

/// Cross-block pairs (no labels needed) plus every within-block W-positive
/// pair.
ConstraintSet svm2_constraints(const OrderedDecomposition& d, const PreferenceOracle& w);

/// Cross-block pairs plus M within-block pairs drawn uniformly with
/// repetition, oriented by w. Reads at most M labels. With every block a
/// singleton the subsample is empty and only the cross-block term remains.
ConstraintSet sample_delta3(const OrderedDecomposition& d, const PreferenceOracle& w,
                            std::uint64_t m, RandomSource& rng);

struct SvmProblem {
  FeatureMap phi;
  ConstraintSet constraints;
  double c = 1.0;  // norm bound on w
};

/// F(w): the weighted sum of hinge slacks. Throws std::invalid_argument if
/// |w| exceeds c or the dimension is wrong.
double objective_value(const SvmProblem& p, std::span<const double> w);

/// One subgradient of F at w (the derivative of every active hinge, 0 at the
/// kinks).
std::vector<double> subgradient(const SvmProblem& p, std::span<const double> w);

struct SolveOptions {
  std::size_t iterations = 10000;
  bool record_iterates = false;
};

struct SolveResult {
  std::vector<double> w;
  double objective = 0;
  std::vector<std::vector<double>> iterates;  // when recorded, w_1..w_T
};

/// Projected subgradient descent from w = 0 over the ball |w| <= c: step t
/// moves c / sqrt(t) along the normalized subgradient. Returns the best
/// iterate seen (never worse than w = 0).
SolveResult solve(const SvmProblem& p, const SolveOptions& options = {});

/// Elements sorted by decreasing score; equal scores keep increasing id.
Permutation extract_permutation(std::span<const double> w, const FeatureMap& phi);

struct SlackBoundReport {
  double f1 = 0;
  std::uint64_t optimal_cost = 0;
  std::uint64_t cyclic_triangles = 0;
  bool holds = false;  // f1 >= optimal_cost
};

/// Compares the SVM1 objective at w with the exact optimal ranking cost.
/// Throws std::invalid_argument above the exact solver's size limit.
SlackBoundReport verify_slack_lower_bound(std::span<const double> w, const FeatureMap& phi,
                                          const PreferenceOracle& w_labels);

enum class LogArgument {
  kInverseEps,       // ln(1 / eps)
  kCOverEps,         // ln(c / eps)
  kCOverEpsPlusTwo,  // ln(c / eps + 2)
};

/// Subsample size M = ceil(scale * eps^-6 * (1 + 2c)^2 * d * ln(arg)).
std::uint64_t subsample_size(double eps, double c, std::size_t d, double scale = 1.0,
                             LogArgument arg = LogArgument::kCOverEpsPlusTwo);

}  // namespace activerank
