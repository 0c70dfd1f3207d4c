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

#ifndef TREENET_BOUNDS_HPP_
#define TREENET_BOUNDS_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <string_view>

namespace treenet {

enum class Regime {
  single_tree_small_k,
  shallow_small_k,
  single_tree_large_k,
  shallow_large_k,
  random_chessboard,
  uniform_labels,
};

std::string_view regime_name(Regime regime);
Regime parse_regime(std::string_view name);

/// Closed-form lower and upper risk bounds with every intermediate constant.
struct BoundReport {
  Regime regime = Regime::single_tree_small_k;
  double lower = 0.0;
  double upper = 0.0;
  /// False when the lower bound's sample-size condition is not met; the
  /// value is still reported but must not be asserted.
  bool lower_valid = true;
  std::map<std::string, double> constants;
};

/// (1 - 2^-k)^n evaluated as exp(n log1p(-2^-k)).
double empty_cell_mass(int k, std::uint64_t n);

/// Explicit error terms of the shallow-network upper bound when k < k*.
double epsilon1(int k);
double epsilon2(int k, double p);
/// (6 epsilon1 + epsilon2) / 7.
double epsilon_shallow(int k, double p);

/// n (1 - (1 - exp(-2 (p - 1/2)^2)) / 2^k)^n.
double epsilon_nkp(std::uint64_t n, int k, double p);
/// 2^-k min(1 - sqrt(4 p (1-p)), 1 - exp(-2 (p - 1/2)^2)).
double rho_kp(int k, double p);

/// Balanced board, k < k*: single centered tree.
BoundReport bound_single_tree_small_k(int k, std::uint64_t n, double p);
/// Balanced board, k < k*: network with one cut on the leaf mean.
BoundReport bound_shallow_small_k(int k, std::uint64_t n, double p);
/// Any board, k >= k*: single centered tree.
BoundReport bound_single_tree_large_k(int k, std::uint64_t n, double p);
/// Any board with n_black black cells, k >= k*: one cut on the leaf mean.
/// The lower bound is flagged valid only for n >= 2^(k+1) (k+1).
BoundReport bound_shallow_large_k(int k, int k_star, std::uint64_t n_black,
                                  std::uint64_t n, double p);

struct RandomChessboardBounds {
  BoundReport single_tree;
  /// Infinite-sample bounds for the one-cut network.
  BoundReport shallow_infinite;
};

/// Cells black i.i.d. with probability N / 2^k*, k < k*.
RandomChessboardBounds bound_random_chessboard(int k, int k_star,
                                               std::uint64_t n_expected_black,
                                               std::uint64_t n, double p);

/// Labels Bernoulli(p) independent of X. k = 0 gives the exact value
/// p(1-p)/n on both sides; k >= 1 gives the two-sided bound.
BoundReport bound_uniform_labels(int k, std::uint64_t n, double p);

/// (1/48)(1 - 8 / (2^k* - 1)) + (9/24) 2^(-2^k*).
double lemma1_lower_bound(int k_star);

}  // namespace treenet

#endif  // TREENET_BOUNDS_HPP_
