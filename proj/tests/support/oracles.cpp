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


#include "oracles.hpp"

#include <boost/math/special_functions/erf.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <stdexcept>

namespace ranklabel::oracle {

namespace {

using Big = boost::multiprecision::cpp_bin_float_50;

// Mass of X = 0..n; the coefficients are built by the multiplicative rule.
std::vector<Big> binomial_pmf(std::int64_t n, double p) {
  const Big bp(p);
  const Big q = Big(1) - bp;
  std::vector<Big> pmf(static_cast<std::size_t>(n + 1));
  Big coeff = 1;
  for (std::int64_t t = 0; t <= n; ++t) {
    if (t > 0) coeff = coeff * Big(n - t + 1) / Big(t);
    pmf[static_cast<std::size_t>(t)] =
        coeff * boost::multiprecision::pow(bp, static_cast<int>(t)) *
        boost::multiprecision::pow(q, static_cast<int>(n - t));
  }
  return pmf;
}

}  // namespace

double binomial_cdf(std::int64_t t, std::int64_t n, double p) {
  if (n < 0 || t < 0 || t > n) throw std::invalid_argument("binomial_cdf");
  const auto pmf = binomial_pmf(n, p);
  Big sum = 0;
  for (std::int64_t i = 0; i <= t; ++i) sum += pmf[static_cast<std::size_t>(i)];
  return static_cast<double>(sum);
}

std::vector<std::size_t> min_table(std::size_t k, double p, double alpha) {
  std::vector<std::size_t> table;
  const Big a(alpha);
  for (std::size_t i = 1; i <= k; ++i) {
    const auto pmf = binomial_pmf(static_cast<std::int64_t>(i), p);
    Big cdf = 0;
    std::size_t t = 0;
    for (; t <= i; ++t) {
      cdf += pmf[t];
      if (cdf > a) break;
    }
    table.push_back(t);
  }
  return table;
}

double simulated_failure_rate(std::span<const std::size_t> table, double p,
                              std::size_t samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  std::size_t failures = 0;
  for (std::size_t s = 0; s < samples; ++s) {
    std::size_t count = 0;
    bool failed = false;
    for (std::size_t i = 0; i < table.size(); ++i) {
      count += coin(rng) ? 1 : 0;
      if (count < table[i]) failed = true;
    }
    failures += failed ? 1 : 0;
  }
  return static_cast<double>(failures) / static_cast<double>(samples);
}

std::uint64_t protected_better_pairs(std::span<const std::uint8_t> flags) {
  std::uint64_t count = 0;
  for (std::size_t i = 0; i < flags.size(); ++i) {
    for (std::size_t j = 0; j < flags.size(); ++j) {
      if (flags[i] && !flags[j] && i < j) ++count;
    }
  }
  return count;
}

double two_sided_normal_p(double z) {
  const Big az = boost::multiprecision::abs(Big(z));
  const Big root2 = boost::multiprecision::sqrt(Big(2));
  return static_cast<double>(boost::math::erfc(az / root2));
}

double proportion_z(std::size_t protected_in_topk, std::size_t k, double p) {
  const Big phat = Big(protected_in_topk) / Big(k);
  const Big bp(p);
  return static_cast<double>((phat - bp) /
                             boost::multiprecision::sqrt(bp * (1 - bp) / Big(k)));
}

double ols_slope(std::span<const double> xs, std::span<const double> ys) {
  const std::size_t n = xs.size();
  Big mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  Big sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (Big(xs[i]) - mx) * (Big(ys[i]) - my);
    sxx += (Big(xs[i]) - mx) * (Big(xs[i]) - mx);
  }
  return static_cast<double>(sxy / sxx);
}

std::vector<double> average_ranks(std::span<const double> v) {
  std::vector<double> ranks(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    double less = 0, equal = 0;
    for (double w : v) {
      if (w < v[i]) less += 1;
      if (w == v[i]) equal += 1;
    }
    ranks[i] = less + (equal + 1) / 2;
  }
  return ranks;
}

double spearman(std::span<const double> x, std::span<const double> y) {
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  const std::size_t n = rx.size();
  Big mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += rx[i];
    my += ry[i];
  }
  mx /= n;
  my /= n;
  Big sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const Big dx = Big(rx[i]) - mx;
    const Big dy = Big(ry[i]) - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  return static_cast<double>(sxy / boost::multiprecision::sqrt(sxx * syy));
}

}  // namespace ranklabel::oracle
