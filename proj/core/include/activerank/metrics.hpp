#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "activerank/query.hpp"
#include "activerank/random.hpp"
#include "activerank/types.hpp"

namespace activerank {

using ElementPair = std::pair<ElementId, ElementId>;

/// Multiset of unordered pairs drawn from `universe` (a free-form label such
/// as "V" or "block:3"). Repeated pairs count with multiplicity.
struct EdgeSample {
  std::vector<ElementPair> pairs;
  std::string universe;
};

/// A sample over the big blocks of a decomposition, split per block
/// (E_i = E restricted to block i). `per_block` has one entry per block of the
/// decomposition; entries for small blocks stay empty.
struct DecompositionSample {
  std::vector<EdgeSample> per_block;
  std::vector<std::size_t> big_blocks;

  std::size_t total_pairs() const;
};

/// Total backward cost: number of pairs u before v (in pi) with W(v, u) = 1.
/// Reads every pair of pi; intended for tests and small-scale verification.
std::uint64_t mfast_cost(const Permutation& pi, const PreferenceOracle& w);

/// mfast_cost of pi restricted to `block`.
std::uint64_t restricted_cost(const Permutation& pi,
                              std::span<const ElementId> block,
                              const PreferenceOracle& w);

/// C_E(pi) = C(n,2) / |E| * (number of sampled pairs that pi orders backward),
/// with n = pi.size(). Throws std::invalid_argument for an empty sample.
double partial_cost(const Permutation& pi, const EdgeSample& e,
                    const PreferenceOracle& w);

/// `count` pairs drawn uniformly with repetition from (elements choose 2).
/// Requires at least two elements.
EdgeSample sample_uniform_pairs(std::span<const ElementId> elements,
                                std::size_t count, RandomSource& rng,
                                std::string universe = "V");

/// Every unordered pair of `elements` exactly once.
EdgeSample all_pairs(std::span<const ElementId> elements,
                     std::string universe = "V");

/// Draws `count` pairs uniformly with repetition from the union of
/// (V_i choose 2) over the big blocks of `d` (big relative to `n`), and splits
/// them per block. Throws std::invalid_argument if `d` has no big block with at
/// least two elements.
DecompositionSample sample_decomposition(const OrderedDecomposition& d,
                                         std::size_t n, std::size_t count,
                                         RandomSource& rng);

/// Unbiased estimator of the summed big-block costs:
///   (sum_{i in B} C(n_i,2)) / |E| * sum_{i in B} backward(E_i),
/// where a block with |E_i| = 0 contributes 0. Throws std::invalid_argument if
/// the sample declares no big blocks.
double decomp_partial_cost(const Permutation& pi, const OrderedDecomposition& d,
                           const DecompositionSample& s,
                           const PreferenceOracle& w);

/// Whether c_tilde evaluates the cross-block term. That term is constant over
/// permutations respecting `d`, so the ranking pipeline skips it; verification
/// reads every cross pair.
enum class CrossTerm { kSkip, kVerify };

/// decomp_partial_cost + exact costs of the small blocks + (in kVerify mode)
/// the number of cross pairs u in V_i, v in V_j, i < j with W(v, u) = 1.
/// Throws std::invalid_argument if sigma does not respect d.
double c_tilde(const Permutation& sigma, const OrderedDecomposition& d,
               const DecompositionSample& s, const PreferenceOracle& w,
               CrossTerm cross = CrossTerm::kVerify);

/// Number of discordant pairs. Throws std::invalid_argument if the element
/// sets differ.
std::uint64_t kendall_tau(const Permutation& pi, const Permutation& sigma);

/// Sum over elements of |rank_pi(u) - rank_sigma(u)|. Throws
/// std::invalid_argument if the element sets differ.
std::uint64_t footrule(const Permutation& pi, const Permutation& sigma);

/// C(pi) - C(pi_{v->i}), computed from the |i - rank(v)| pairs v crosses.
std::int64_t test_move_exact(const Permutation& pi, const PreferenceOracle& w,
                             ElementId v, Position i);

/// Sampled estimate of test_move_exact from the pairs of `e` that contain v
/// and whose other endpoint lies in the crossed interval (other entries are
/// ignored). Throws std::invalid_argument if no such entry exists.
double test_move_sampled(const Permutation& pi, const PreferenceOracle& w,
                         ElementId v, Position i, const EdgeSample& e);

}  // namespace activerank
