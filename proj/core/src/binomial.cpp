/*
 * Copyright 2026 The treenet Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "treenet/binomial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "treenet/error.hpp"

namespace treenet {
namespace {

void check_parameters(std::uint64_t n, double p) {
  if (n < 1) throw DomainError("binomial oracles need n >= 1");
  if (!(p > 0.0 && p <= 1.0)) throw DomainError("binomial p must lie in (0, 1]");
}

// Sum of weight(z) P[Z = z] over z in [lo, hi] and the matching mass, both
// scaled by exp(-max log pmf) so that far tails do not underflow. Only the
// ratio of the two results is meaningful.
template <typename Weight>
std::pair<double, double> scaled_tail(const std::vector<double>& log_pmf,
                                      std::uint64_t lo, std::uint64_t hi,
                                      Weight weight) {
  double peak = -std::numeric_limits<double>::infinity();
  for (std::uint64_t z = lo; z <= hi; ++z) peak = std::max(peak, log_pmf[z]);
  double weighted = 0.0, mass = 0.0;
  if (!std::isfinite(peak)) return {0.0, 0.0};
  for (std::uint64_t z = lo; z <= hi; ++z) {
    const double w = std::exp(log_pmf[z] - peak);
    weighted += weight(z) * w;
    mass += w;
  }
  return {weighted, mass};
}

std::vector<double> log_pmf_table(std::uint64_t n, double p) {
  std::vector<double> table(n + 1);
  for (std::uint64_t z = 0; z <= n; ++z) table[z] = log_binomial_pmf(n, z, p);
  return table;
}

}  // namespace

double log_binomial_pmf(std::uint64_t n, std::uint64_t z, double p) {
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  if (z > n) return kNegInf;
  const double nd = static_cast<double>(n);
  const double zd = static_cast<double>(z);
  const double log_choose =
      std::lgamma(nd + 1.0) - std::lgamma(zd + 1.0) - std::lgamma(nd - zd + 1.0);
  // 0 * log(0) is taken as 0 so that p = 0 and p = 1 stay well defined.
  const double successes = z == 0 ? 0.0 : zd * std::log(p);
  const double failures = z == n ? 0.0 : (nd - zd) * std::log1p(-p);
  return log_choose + successes + failures;
}

std::vector<double> binomial_pmf(std::uint64_t n, double p) {
  std::vector<double> pmf(n + 1);
  for (std::uint64_t z = 0; z <= n; ++z) pmf[z] = std::exp(log_binomial_pmf(n, z, p));
  return pmf;
}

double expected_inverse_positive(std::uint64_t n, double p) {
  double total = 0.0;
  for (std::uint64_t z = 1; z <= n; ++z)
    total += std::exp(log_binomial_pmf(n, z, p)) / static_cast<double>(z);
  return total;
}

BinomialMoments binomial_oracles(std::uint64_t n, double p) {
  check_parameters(n, p);
  const std::vector<double> log_pmf = log_pmf_table(n, p);
  const double nd = static_cast<double>(n);

  BinomialMoments m;
  m.n = n;
  m.p = p;
  for (std::uint64_t z = 0; z <= n; ++z) {
    const double pz = std::exp(log_pmf[z]);
    const double zd = static_cast<double>(z);
    m.mean += zd * pz;
    m.inv_one_plus += pz / (1.0 + zd);
    m.inv_one_plus_sq += pz / (1.0 + zd * zd);
    if (z > 0) {
      m.inv_positive += pz / zd;
      m.inv_sqrt_positive += pz / std::sqrt(zd);
    }
  }

  const double none = std::exp(nd * std::log1p(-p));  // (1-p)^n
  m.inv_positive_lower = (1.0 - none) / ((nd + 1.0) * p);
  m.inv_positive_upper = 2.0 / ((nd + 1.0) * p);
  m.inv_one_plus_upper = 1.0 / ((nd + 1.0) * p);
  m.inv_one_plus_sq_upper = 3.0 / ((nd + 1.0) * (nd + 2.0) * p * p);
  m.inv_sqrt_upper = 2.0 / std::sqrt(nd * p);

  m.tail_means.reserve(n + 1);
  for (std::uint64_t k = 0; k <= n; ++k) {
    const auto [weighted, mass] = scaled_tail(
        log_pmf, k, n, [](std::uint64_t z) { return static_cast<double>(z); });
    TailMean tail;
    tail.threshold = k;
    if (mass > 0.0) {
      tail.exact = weighted / mass;
      // P[Z = k] / P[Z >= k] on the same scale as `mass`.
      double peak = -std::numeric_limits<double>::infinity();
      for (std::uint64_t z = k; z <= n; ++z) peak = std::max(peak, log_pmf[z]);
      const double ratio = std::exp(log_pmf[k] - peak) / mass;
      tail.closed_form = nd * p + (1.0 - p) * static_cast<double>(k) * ratio;
    } else {
      tail.exact = tail.closed_form = std::numeric_limits<double>::quiet_NaN();
    }
    m.tail_means.push_back(tail);
  }

  if (p == 0.5) {
    const std::uint64_t half = (n + 1) / 2;
    const auto identity = [](std::uint64_t z) { return static_cast<double>(z); };
    if (half >= 1) {
      const auto [w, mass] = scaled_tail(log_pmf, 0, half - 1, identity);
      m.lower_half_mean = w / mass;
      m.lower_half_bound =
          nd / 2.0 - (std::sqrt(nd) / std::sqrt(std::numbers::pi) +
                      2.0 * std::sqrt(2.0 * nd) /
                          (std::numbers::pi * std::sqrt(2.0 * nd + 1.0)));
    }
    const auto [w, mass] = scaled_tail(log_pmf, half, n, identity);
    m.upper_half_mean = w / mass;
    m.upper_half_bound =
        nd / 2.0 + 1.0 + 1.0 / std::sqrt(std::numbers::pi * (nd + 1.0));
  }
  return m;
}

std::vector<InequalityCheck> BinomialMoments::checks(double identity_tolerance) const {
  std::vector<InequalityCheck> out;
  // Exact summation and the closed forms round differently; where an
  // inequality is tight (e.g. (ii) once (1-p)^(n+1) underflows) allow a few
  // ulps of slack.
  auto le = [&](std::string name, double lhs, double rhs) {
    const double slack = 1e-12 * std::max(std::abs(lhs), std::abs(rhs));
    out.push_back({std::move(name), lhs, rhs, lhs <= rhs + slack});
  };
  le("(i) lower", inv_positive_lower, inv_positive);
  le("(i) upper", inv_positive, inv_positive_upper);
  le("(ii)", inv_one_plus, inv_one_plus_upper);
  le("(iii)", inv_one_plus_sq, inv_one_plus_sq_upper);
  le("(iv)", inv_sqrt_positive, inv_sqrt_upper);
  for (const TailMean& t : tail_means) {
    if (std::isnan(t.exact)) continue;
    const double gap = std::abs(t.exact - t.closed_form);
    const double scale = std::max(1.0, std::abs(t.exact));
    out.push_back({"(v) k=" + std::to_string(t.threshold), t.exact, t.closed_form,
                   gap <= identity_tolerance * scale});
  }
  if (lower_half_mean) le("(vi)", *lower_half_bound, *lower_half_mean);
  if (upper_half_mean) le("(vii)", *upper_half_mean, *upper_half_bound);
  return out;
}

double uniform_label_risk_exact(int k, std::uint64_t n, double p) {
  if (k < 0) throw DomainError("depth must be non-negative");
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("p must lie in [0, 1]");
  const double q = std::ldexp(1.0, -k);
  const double empty = std::exp(static_cast<double>(n) * std::log1p(-q));
  const double inverse = n == 0 ? 0.0 : expected_inverse_positive(n, q);
  return p * (1.0 - p) * inverse + p * p * (k == 0 && n > 0 ? 0.0 : empty);
}

}  // namespace treenet
