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

#include "ranklabel/fairness.hpp"

#include <algorithm>
#include <boost/math/distributions/binomial.hpp>
#include <cmath>
#include <limits>

#include "ranklabel/error.hpp"

namespace ranklabel {

std::string_view measure_name(FairnessMeasure m) {
  switch (m) {
    case FairnessMeasure::kFaIr: return "fa_ir";
    case FairnessMeasure::kProportion: return "proportion";
    case FairnessMeasure::kPairwise: return "pairwise";
  }
  return "fa_ir";
}

FairnessMeasure parse_measure(std::string_view text) {
  if (text == "fa_ir") return FairnessMeasure::kFaIr;
  if (text == "proportion") return FairnessMeasure::kProportion;
  if (text == "pairwise") return FairnessMeasure::kPairwise;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown fairness measure '" + std::string(text) + "'");
}

std::string_view direction_name(Direction d) {
  switch (d) {
    case Direction::kUnder: return "under";
    case Direction::kOver: return "over";
    case Direction::kNone: return "none";
  }
  return "none";
}

Direction parse_direction(std::string_view text) {
  if (text == "under") return Direction::kUnder;
  if (text == "over") return Direction::kOver;
  if (text == "none") return Direction::kNone;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown direction '" + std::string(text) + "'");
}

namespace {

bool open_unit(double x) { return x > 0.0 && x < 1.0; }

void check_table_args(std::size_t k, double p, double alpha) {
  if (k == 0) throw Error(ErrorCode::kInvalidArgument, "k must be positive");
  if (!open_unit(p)) {
    throw Error(ErrorCode::kInvalidArgument, "p must lie in (0, 1)");
  }
  if (!open_unit(alpha)) {
    throw Error(ErrorCode::kInvalidArgument, "alpha must lie in (0, 1)");
  }
}

double cdf_unchecked(std::size_t t, std::size_t n, double p) {
  if (t >= n) return 1.0;
  const boost::math::binomial_distribution<double> dist(
      static_cast<double>(n), p);
  return boost::math::cdf(dist, static_cast<double>(t));
}

// Valid for any alpha in [0, 1): t never passes i because cdf(i, i) = 1.
std::vector<std::size_t> min_table_unchecked(std::size_t k, double p,
                                             double alpha) {
  std::vector<std::size_t> m(k);
  std::size_t t = 0;
  for (std::size_t i = 1; i <= k; ++i) {
    // cdf(t, i) <= cdf(t, i - 1), so the table never decreases.
    while (t < i && cdf_unchecked(t, i, p) <= alpha) ++t;
    m[i - 1] = t;
  }
  return m;
}

double failure_probability(std::span<const std::size_t> m, double p) {
  const std::size_t k = m.size();
  // mass[c] = P(protected count == c and every prefix so far passed)
  std::vector<double> mass(k + 1, 0.0);
  std::vector<double> next(k + 1, 0.0);
  mass[0] = 1.0;
  double failed = 0.0;
  for (std::size_t i = 1; i <= k; ++i) {
    next[0] = mass[0] * (1.0 - p);
    for (std::size_t c = 1; c <= i; ++c) {
      next[c] = mass[c] * (1.0 - p) + mass[c - 1] * p;
    }
    for (std::size_t c = 0; c < m[i - 1]; ++c) {
      failed += next[c];
      next[c] = 0.0;
    }
    std::swap(mass, next);
  }
  return std::clamp(failed, 0.0, 1.0);
}

}  // namespace

void FairnessConfig::validate() const {
  if (!open_unit(alpha)) {
    throw Error(ErrorCode::kInvalidArgument, "alpha must lie in (0, 1)");
  }
  if (p && !open_unit(*p)) {
    throw Error(ErrorCode::kInvalidArgument, "p must lie in (0, 1)");
  }
  if (k && *k == 0) {
    throw Error(ErrorCode::kInvalidArgument, "k must be positive");
  }
}

double binomial_cdf(std::int64_t t, std::int64_t n, double p) {
  if (n < 1 || t < 0 || t > n || !open_unit(p)) {
    throw Error(ErrorCode::kInvalidArgument,
                "binomial_cdf needs 0 <= t <= n, n >= 1, 0 < p < 1");
  }
  return cdf_unchecked(static_cast<std::size_t>(t), static_cast<std::size_t>(n),
                       p);
}

std::vector<std::size_t> fair_min_table(std::size_t k, double p,
                                        double alpha) {
  check_table_args(k, p, alpha);
  return min_table_unchecked(k, p, alpha);
}

double prefix_failure_probability(std::size_t k, double p, double alpha) {
  check_table_args(k, p, alpha);
  return failure_probability(min_table_unchecked(k, p, alpha), p);
}

double adjust_significance(std::size_t k, double p, double alpha) {
  check_table_args(k, p, alpha);
  const auto fail_at = [&](double a) {
    return failure_probability(min_table_unchecked(k, p, a), p);
  };
  if (fail_at(alpha) <= alpha) return alpha;
  // Invariant: fail_at(lo) <= alpha < fail_at(hi). At a = 0 every minimum
  // count is zero, so nothing fails.
  double lo = 0.0;
  double hi = alpha;
  while (hi - lo > kSignificanceTolerance) {
    const double mid = lo + (hi - lo) / 2.0;
    if (fail_at(mid) <= alpha) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  if (lo > 0.0) return lo;
  // Only reachable when alpha itself is below the tolerance; return the
  // smallest positive level that still satisfies the bound.
  return std::max(std::numeric_limits<double>::min(), lo);
}

double two_sided_normal_p(double z) {
  return std::clamp(std::erfc(std::abs(z) / std::sqrt(2.0)), 0.0, 1.0);
}

// -- RankedGroups -----------------------------------------------------------

RankedGroups RankedGroups::from_flags(std::vector<std::uint8_t> flags) {
  RankedGroups g;
  for (auto f : flags) {
    if (f) {
      ++g.n_protected;
    } else {
      ++g.n_other;
    }
  }
  g.is_protected = std::move(flags);
  return g;
}

double RankedGroups::protected_share() const {
  const std::size_t n = n_protected + n_other;
  return n ? static_cast<double>(n_protected) / static_cast<double>(n) : 0.0;
}

RankedGroups ranked_groups(const Ranking& ranking, const Dataset& dataset,
                           const ProtectedFeature& feature) {
  const Column& col = dataset.categorical_column(feature.attribute);
  // Only values that actually occur among the ranked rows count.
  std::vector<std::uint8_t> seen(col.categories().size(), 0);
  for (std::size_t row : ranking.order) {
    const auto code = col.codes()[row];
    if (code == Column::kMissingCode) {
      throw Error(ErrorCode::kInvalidArgument,
                  "ranked row " + std::to_string(row) +
                      " has no value for '" + feature.attribute + "'");
    }
    seen[static_cast<std::size_t>(code)] = 1;
  }
  const auto distinct = std::count(seen.begin(), seen.end(), 1);
  if (distinct == 1) {
    throw Error(ErrorCode::kEmptyGroup,
                "only one value of '" + feature.attribute +
                    "' occurs among the ranked rows");
  }
  if (distinct != 2) {
    throw Error(ErrorCode::kNonBinaryAttribute,
                "attribute '" + feature.attribute + "' has " +
                    std::to_string(distinct) +
                    " distinct values; fairness tests need exactly 2");
  }
  const auto& cats = col.categories();
  const auto it =
      std::find(cats.begin(), cats.end(), feature.protected_value);
  if (it == cats.end() || !seen[static_cast<std::size_t>(it - cats.begin())]) {
    throw Error(ErrorCode::kInvalidArgument,
                "value '" + feature.protected_value + "' does not occur in '" +
                    feature.attribute + "'");
  }
  const auto target = static_cast<std::int32_t>(it - cats.begin());
  std::vector<std::uint8_t> flags;
  flags.reserve(ranking.size());
  for (std::size_t row : ranking.order) {
    flags.push_back(col.codes()[row] == target ? 1 : 0);
  }
  RankedGroups g = RankedGroups::from_flags(std::move(flags));
  if (g.n_protected == 0 || g.n_other == 0) {
    throw Error(ErrorCode::kEmptyGroup, "a group is empty");
  }
  return g;
}

namespace {

void require_both_groups(const RankedGroups& g) {
  if (g.n_protected == 0 || g.n_other == 0) {
    throw Error(ErrorCode::kEmptyGroup,
                "both protected and non-protected groups must be nonempty");
  }
}

double resolve_p(const RankedGroups& g, const FairnessConfig& config) {
  return config.p ? *config.p : g.protected_share();
}

}  // namespace

// -- FA*IR prefix test ------------------------------------------------------

FairnessResult fa_ir_test(const RankedGroups& groups, std::size_t k,
                          const FairnessConfig& config) {
  config.validate();
  require_both_groups(groups);
  const double p = resolve_p(groups, config);
  if (!open_unit(p)) {
    throw Error(ErrorCode::kDegeneratePopulation,
                "protected proportion must lie in (0, 1)");
  }
  k = std::min(k, groups.is_protected.size());
  if (k == 0) throw Error(ErrorCode::kInvalidArgument, "k must be positive");

  FaIrDetails d;
  d.alpha = config.alpha;
  d.p = p;
  d.k = k;
  d.adjusted_alpha = adjust_significance(k, p, config.alpha);
  d.min_counts = fair_min_table(k, p, d.adjusted_alpha);
  d.protected_counts.resize(k);
  std::size_t tau = 0;
  double worst = 1.0;
  for (std::size_t i = 1; i <= k; ++i) {
    tau += groups.is_protected[i - 1];
    d.protected_counts[i - 1] = tau;
    worst = std::min(worst, cdf_unchecked(tau, i, p));
    if (!d.first_failing_prefix && tau < d.min_counts[i - 1]) {
      d.first_failing_prefix = i;
    }
  }

  FairnessResult r;
  r.measure = FairnessMeasure::kFaIr;
  r.statistic = worst;
  r.fair = !d.first_failing_prefix.has_value();
  r.direction = r.fair ? Direction::kNone : Direction::kUnder;
  r.details = std::move(d);
  return r;
}

// -- Proportion test --------------------------------------------------------

ProportionDetails proportion_z(std::size_t protected_in_topk, std::size_t k,
                               double p, double alpha) {
  if (k == 0) throw Error(ErrorCode::kInvalidArgument, "k must be positive");
  if (protected_in_topk > k) {
    throw Error(ErrorCode::kInvalidArgument,
                "protected count exceeds the selection size");
  }
  if (!open_unit(p)) {
    throw Error(ErrorCode::kDegeneratePopulation,
                "protected proportion must lie in (0, 1)");
  }
  ProportionDetails d;
  d.alpha = alpha;
  d.p = p;
  d.k = k;
  d.protected_in_topk = protected_in_topk;
  d.topk_proportion =
      static_cast<double>(protected_in_topk) / static_cast<double>(k);
  d.z = (d.topk_proportion - p) /
        std::sqrt(p * (1.0 - p) / static_cast<double>(k));
  return d;
}

FairnessResult proportion_test(const RankedGroups& groups, std::size_t k,
                               const FairnessConfig& config) {
  config.validate();
  require_both_groups(groups);
  k = std::min(k, groups.is_protected.size());
  std::size_t in_topk = 0;
  for (std::size_t i = 0; i < k; ++i) in_topk += groups.is_protected[i];

  ProportionDetails d =
      proportion_z(in_topk, k, resolve_p(groups, config), config.alpha);
  FairnessResult r;
  r.measure = FairnessMeasure::kProportion;
  r.statistic = d.z;
  r.p_value = two_sided_normal_p(d.z);
  r.fair = *r.p_value >= config.alpha;
  if (!r.fair) {
    r.direction = d.topk_proportion < d.p ? Direction::kUnder : Direction::kOver;
  }
  r.details = d;
  return r;
}

// -- Pairwise test ----------------------------------------------------------

std::uint64_t pairwise_protected_better(
    std::span<const std::uint8_t> is_protected) {
  std::uint64_t others_remaining = 0;
  for (auto f : is_protected) others_remaining += f ? 0 : 1;
  std::uint64_t better = 0;
  for (auto f : is_protected) {
    if (f) {
      better += others_remaining;
    } else {
      --others_remaining;
    }
  }
  return better;
}

double pairwise_statistic(std::span<const std::uint8_t> is_protected) {
  std::uint64_t n1 = 0;
  for (auto f : is_protected) n1 += f ? 1 : 0;
  const std::uint64_t n2 = is_protected.size() - n1;
  if (n1 == 0 || n2 == 0) {
    throw Error(ErrorCode::kEmptyGroup,
                "both protected and non-protected groups must be nonempty");
  }
  return static_cast<double>(pairwise_protected_better(is_protected)) /
         static_cast<double>(n1 * n2);
}

FairnessResult pairwise_test(const RankedGroups& groups,
                             const FairnessConfig& config) {
  config.validate();
  require_both_groups(groups);
  PairwiseDetails d;
  d.alpha = config.alpha;
  d.n_protected = groups.n_protected;
  d.n_other = groups.n_other;
  d.pairs_total = static_cast<std::uint64_t>(d.n_protected) * d.n_other;
  d.pairs_protected_better = pairwise_protected_better(groups.is_protected);

  const double n1 = static_cast<double>(d.n_protected);
  const double n2 = static_cast<double>(d.n_other);
  const double u = static_cast<double>(d.pairs_protected_better);
  const double mean = n1 * n2 / 2.0;
  const double sd = std::sqrt(n1 * n2 * (n1 + n2 + 1.0) / 12.0);
  d.z = (u - mean) / sd;

  FairnessResult r;
  r.measure = FairnessMeasure::kPairwise;
  r.statistic = u / static_cast<double>(d.pairs_total);
  r.p_value = two_sided_normal_p(d.z);
  r.fair = *r.p_value >= config.alpha;
  if (!r.fair) r.direction = d.z < 0.0 ? Direction::kUnder : Direction::kOver;
  r.details = d;
  return r;
}

// -- Ranking-level entry points -----------------------------------------------

namespace {

std::size_t resolve_k(const Ranking& ranking, const FairnessConfig& config) {
  return config.k ? *config.k : ranking.k;
}

template <typename Fn>
FairnessResult with_feature(const ProtectedFeature& feature, Fn&& fn) {
  FairnessResult r = fn();
  r.feature = feature;
  return r;
}

}  // namespace

FairnessResult fa_ir_test(const Ranking& ranking, const Dataset& dataset,
                          const ProtectedFeature& feature,
                          const FairnessConfig& config) {
  const auto groups = ranked_groups(ranking, dataset, feature);
  return with_feature(feature, [&] {
    return fa_ir_test(groups, resolve_k(ranking, config), config);
  });
}

FairnessResult proportion_test(const Ranking& ranking, const Dataset& dataset,
                               const ProtectedFeature& feature,
                               const FairnessConfig& config) {
  const auto groups = ranked_groups(ranking, dataset, feature);
  return with_feature(feature, [&] {
    return proportion_test(groups, resolve_k(ranking, config), config);
  });
}

double pairwise_statistic(const Ranking& ranking, const Dataset& dataset,
                          const ProtectedFeature& feature) {
  return pairwise_statistic(
      ranked_groups(ranking, dataset, feature).is_protected);
}

FairnessResult pairwise_test(const Ranking& ranking, const Dataset& dataset,
                             const ProtectedFeature& feature,
                             const FairnessConfig& config) {
  const auto groups = ranked_groups(ranking, dataset, feature);
  return with_feature(feature, [&] { return pairwise_test(groups, config); });
}

std::vector<FairnessResult> fairness_suite(
    const Ranking& ranking, const Dataset& dataset,
    const std::string& sensitive_attribute, const FairnessConfig& config) {
  config.validate();
  const Column& col = dataset.categorical_column(sensitive_attribute);
  std::vector<std::string> values;
  {
    std::vector<std::uint8_t> seen(col.categories().size(), 0);
    for (std::size_t row : ranking.order) {
      const auto code = col.codes()[row];
      if (code != Column::kMissingCode) seen[static_cast<std::size_t>(code)] = 1;
    }
    for (std::size_t c = 0; c < seen.size(); ++c) {
      if (seen[c]) values.push_back(col.categories()[c]);
    }
  }
  if (values.size() == 1) {
    throw Error(ErrorCode::kEmptyGroup,
                "only one value of '" + sensitive_attribute +
                    "' occurs among the ranked rows");
  }
  if (values.size() != 2) {
    throw Error(ErrorCode::kNonBinaryAttribute,
                "attribute '" + sensitive_attribute + "' has " +
                    std::to_string(values.size()) +
                    " distinct values; fairness tests need exactly 2");
  }
  std::sort(values.begin(), values.end());

  const std::size_t k = resolve_k(ranking, config);
  std::vector<FairnessResult> results;
  results.reserve(6);
  for (std::size_t v = 0; v < values.size(); ++v) {
    const ProtectedFeature feature{sensitive_attribute, values[v]};
    const auto groups = ranked_groups(ranking, dataset, feature);
    FairnessConfig per = config;
    if (config.p && v == 1) per.p = 1.0 - *config.p;
    for (auto r : {fa_ir_test(groups, k, per), proportion_test(groups, k, per),
                   pairwise_test(groups, per)}) {
      r.feature = feature;
      results.push_back(std::move(r));
    }
  }
  return results;
}

}  // namespace ranklabel
