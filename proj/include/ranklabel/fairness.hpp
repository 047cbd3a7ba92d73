// Copyright 2026 The Ranklabel Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Statistical parity tests of a ranking against one value of a binary
// sensitive attribute:
//
//   * the ranked group fairness prefix test (FA*IR): every prefix of the
//     top-k must hold at least a binomially derived minimum number of
//     protected items, at a significance level corrected for testing all k
//     prefixes at once;
//   * a one-sample proportion z-test of the protected share in the top-k;
//   * a pairwise preference test, the Mann-Whitney U statistic of protected
//     versus non-protected positions under a normal approximation.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "ranklabel/dataset.hpp"
#include "ranklabel/scoring.hpp"

namespace ranklabel {

inline constexpr double kDefaultAlpha = 0.05;
inline constexpr double kSignificanceTolerance = 1e-6;

enum class FairnessMeasure { kFaIr, kProportion, kPairwise };
enum class Direction { kUnder, kOver, kNone };

std::string_view measure_name(FairnessMeasure m);
FairnessMeasure parse_measure(std::string_view text);
std::string_view direction_name(Direction d);
Direction parse_direction(std::string_view text);

struct ProtectedFeature {
  std::string attribute;
  std::string protected_value;

  friend bool operator==(const ProtectedFeature&,
                         const ProtectedFeature&) = default;
};

struct FairnessConfig {
  double alpha = kDefaultAlpha;
  // Protected proportion; estimated from the ranked rows when absent.
  std::optional<double> p;
  // Prefix / selection size; the ranking's k when absent.
  std::optional<std::size_t> k;

  void validate() const;

  friend bool operator==(const FairnessConfig&,
                         const FairnessConfig&) = default;
};

struct FaIrDetails {
  double alpha = 0.0;
  double adjusted_alpha = 0.0;
  double p = 0.0;
  std::size_t k = 0;
  std::vector<std::size_t> protected_counts;  // tau_i for prefix length i
  std::vector<std::size_t> min_counts;        // m_i for prefix length i
  std::optional<std::size_t> first_failing_prefix;  // 1-based

  friend bool operator==(const FaIrDetails&, const FaIrDetails&) = default;
};

struct ProportionDetails {
  double alpha = 0.0;
  double p = 0.0;
  std::size_t k = 0;
  std::size_t protected_in_topk = 0;
  double topk_proportion = 0.0;
  double z = 0.0;

  friend bool operator==(const ProportionDetails&,
                         const ProportionDetails&) = default;
};

struct PairwiseDetails {
  double alpha = 0.0;
  std::size_t n_protected = 0;
  std::size_t n_other = 0;
  std::uint64_t pairs_total = 0;
  std::uint64_t pairs_protected_better = 0;  // the U statistic
  double z = 0.0;
  bool continuity_correction = false;

  friend bool operator==(const PairwiseDetails&,
                         const PairwiseDetails&) = default;
};

using FairnessDetails =
    std::variant<FaIrDetails, ProportionDetails, PairwiseDetails>;

struct FairnessResult {
  FairnessMeasure measure = FairnessMeasure::kFaIr;
  ProtectedFeature feature;
  double statistic = 0.0;
  std::optional<double> p_value;  // absent for the prefix test
  bool fair = true;
  Direction direction = Direction::kNone;
  FairnessDetails details;

  friend bool operator==(const FairnessResult&,
                         const FairnessResult&) = default;
};

// -- Kernels ----------------------------------------------------------------

// P[X <= t] for X ~ Binomial(n, p). Throws kInvalidArgument unless
// 0 <= t <= n, n >= 1 and 0 < p < 1.
double binomial_cdf(std::int64_t t, std::int64_t n, double p);

// m[i-1] is the smallest count t with binomial_cdf(t, i, p) > alpha, for
// prefix lengths i = 1..k. A prefix of length i passes iff its protected
// count is at least m[i-1].
std::vector<std::size_t> fair_min_table(std::size_t k, double p, double alpha);

// Probability that a ranking whose k positions are independently protected
// with probability p fails at least one prefix of fair_min_table(k, p,
// alpha). Exact dynamic program over (prefix length, protected count).
double prefix_failure_probability(std::size_t k, double p, double alpha);

// Largest a in (0, alpha] (to within kSignificanceTolerance) such that
// prefix_failure_probability(k, p, a) <= alpha.
double adjust_significance(std::size_t k, double p, double alpha);

// Two-sided standard normal tail, P[|Z| >= |z|].
double two_sided_normal_p(double z);

// -- Tests on rank-ordered group flags ----------------------------------------

// Group membership of each ranked row, best first (1 = protected).
struct RankedGroups {
  std::vector<std::uint8_t> is_protected;
  std::size_t n_protected = 0;
  std::size_t n_other = 0;

  static RankedGroups from_flags(std::vector<std::uint8_t> flags);
  double protected_share() const;
};

// Resolves `feature` against the ranked rows of `dataset`. Throws
// kTypeMismatch for a numeric attribute, kNonBinaryAttribute unless exactly
// two values occur, kInvalidArgument for an unknown protected value or a
// ranked row with a missing value, kEmptyGroup when either group is empty.
RankedGroups ranked_groups(const Ranking& ranking, const Dataset& dataset,
                           const ProtectedFeature& feature);

FairnessResult fa_ir_test(const RankedGroups& groups, std::size_t k,
                          const FairnessConfig& config);

// z = (p_hat - p) / sqrt(p (1 - p) / k) with the two-sided p-value.
ProportionDetails proportion_z(std::size_t protected_in_topk, std::size_t k,
                               double p, double alpha);
FairnessResult proportion_test(const RankedGroups& groups, std::size_t k,
                               const FairnessConfig& config);

// Fraction of (protected, other) pairs where the protected item ranks
// strictly better. Linear scan; see pairwise_statistic_bruteforce in the
// tests for the quadratic definition.
double pairwise_statistic(std::span<const std::uint8_t> is_protected);
std::uint64_t pairwise_protected_better(
    std::span<const std::uint8_t> is_protected);
FairnessResult pairwise_test(const RankedGroups& groups,
                             const FairnessConfig& config);

// -- Ranking-level entry points -----------------------------------------------

FairnessResult fa_ir_test(const Ranking& ranking, const Dataset& dataset,
                          const ProtectedFeature& feature,
                          const FairnessConfig& config);
FairnessResult proportion_test(const Ranking& ranking, const Dataset& dataset,
                               const ProtectedFeature& feature,
                               const FairnessConfig& config);
double pairwise_statistic(const Ranking& ranking, const Dataset& dataset,
                          const ProtectedFeature& feature);
FairnessResult pairwise_test(const Ranking& ranking, const Dataset& dataset,
                             const ProtectedFeature& feature,
                             const FairnessConfig& config);

// All three measures for each value of the binary `sensitive_attribute`
// (values in lexicographic order), six results in total. The proportion is
// re-estimated per value; an override p in `config` applies to the first
// value and 1 - p to the second.
std::vector<FairnessResult> fairness_suite(const Ranking& ranking,
                                           const Dataset& dataset,
                                           const std::string& sensitive_attribute,
                                           const FairnessConfig& config);

}  // namespace ranklabel
