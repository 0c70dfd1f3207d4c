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

#ifndef TREENET_BINOMIAL_HPP_
#define TREENET_BINOMIAL_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace treenet {

/// log P[Z = z] for Z ~ Binomial(n, p), computed with lgamma. Returns -inf
/// for impossible outcomes (including p = 0 or 1 edge cases).
double log_binomial_pmf(std::uint64_t n, std::uint64_t z, double p);

/// P[Z = z] for z = 0..n.
std::vector<double> binomial_pmf(std::uint64_t n, double p);

struct TailMean {
  std::uint64_t threshold = 0;
  /// E[Z | Z >= threshold] by direct summation.
  double exact = 0.0;
  /// n p + (1 - p) k P[Z = k] / P[Z >= k].
  double closed_form = 0.0;
};

struct InequalityCheck {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

/// Exact moments of Z ~ Binomial(n, p) next to the closed-form bounds they
/// are compared against.
struct BinomialMoments {
  std::uint64_t n = 0;
  double p = 0.0;

  double mean = 0.0;
  double inv_positive = 0.0;       // E[1{Z>0} / Z]
  double inv_one_plus = 0.0;       // E[1 / (1 + Z)]
  double inv_one_plus_sq = 0.0;    // E[1 / (1 + Z^2)]
  double inv_sqrt_positive = 0.0;  // E[1{Z>0} / sqrt(Z)]

  double inv_positive_lower = 0.0;  // (1 - (1-p)^n) / ((n+1) p)
  double inv_positive_upper = 0.0;  // 2 / ((n+1) p)
  double inv_one_plus_upper = 0.0;  // 1 / ((n+1) p)
  double inv_one_plus_sq_upper = 0.0;  // 3 / ((n+1)(n+2) p^2)
  double inv_sqrt_upper = 0.0;         // 2 / sqrt(n p)

  /// E[Z | Z >= k] for every k in 0..n.
  std::vector<TailMean> tail_means;

  /// Only for p = 1/2: E[Z | Z <= floor((n+1)/2) - 1] and its lower bound
  /// n/2 - (sqrt(n/pi) + 2 sqrt(2n) / (pi sqrt(2n+1))).
  std::optional<double> lower_half_mean;
  std::optional<double> lower_half_bound;
  /// Only for p = 1/2: E[Z | Z >= floor((n+1)/2)] and its upper bound
  /// n/2 + 1 + 1/sqrt(pi (n+1)).
  std::optional<double> upper_half_mean;
  std::optional<double> upper_half_bound;

  /// Every inequality above as lhs <= rhs, plus the tail-mean identity as a
  /// two-sided check at relative tolerance `identity_tolerance`.
  std::vector<InequalityCheck> checks(double identity_tolerance = 1e-10) const;
};

/// Throws DomainError unless n >= 1 and p in (0, 1].
BinomialMoments binomial_oracles(std::uint64_t n, double p);

/// E[1{Z>0} / Z] alone, Z ~ Binomial(n, p).
double expected_inverse_positive(std::uint64_t n, double p);

/// Exact risk of a depth-k centered tree when labels are Bernoulli(p)
/// independent of X: p(1-p) E[1{N>0}/N] + p^2 (1 - 2^-k)^n with
/// N ~ Binomial(n, 2^-k).
double uniform_label_risk_exact(int k, std::uint64_t n, double p);

}  // namespace treenet

#endif  // TREENET_BINOMIAL_HPP_
