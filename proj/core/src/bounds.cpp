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

#include "treenet/bounds.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <utility>

#include "treenet/error.hpp"

namespace treenet {
namespace {

constexpr double kPi = std::numbers::pi;

constexpr std::array<std::pair<Regime, std::string_view>, 6> kRegimeNames{{
    {Regime::single_tree_small_k, "single_tree_small_k"},
    {Regime::shallow_small_k, "shallow_small_k"},
    {Regime::single_tree_large_k, "single_tree_large_k"},
    {Regime::shallow_large_k, "shallow_large_k"},
    {Regime::random_chessboard, "random_chessboard"},
    {Regime::uniform_labels, "uniform_labels"},
}};

double pow2(double e) { return std::exp2(e); }

void check_common(int k, std::uint64_t n, double p) {
  if (k < 1) throw DomainError("bounds need depth k >= 1");
  if (k > 60) throw DomainError("depth k is limited to 60");
  if (n < 1) throw DomainError("bounds need n >= 1");
  if (!(p > 0.5 && p <= 1.0)) throw DomainError("bounds need p in (1/2, 1]");
}

BoundReport make_report(Regime regime, int k, std::uint64_t n, double p) {
  BoundReport r;
  r.regime = regime;
  r.constants["k"] = k;
  r.constants["p"] = p;
  r.constants["bias"] = (p - 0.5) * (p - 0.5);
  r.constants["empty_cell_mass"] = empty_cell_mass(k, n);
  return r;
}

}  // namespace

std::string_view regime_name(Regime regime) {
  for (const auto& [value, name] : kRegimeNames)
    if (value == regime) return name;
  return "unknown";
}

Regime parse_regime(std::string_view name) {
  for (const auto& [value, text] : kRegimeNames)
    if (text == name) return value;
  throw DomainError("unknown regime '" + std::string(name) + "'");
}

double empty_cell_mass(int k, std::uint64_t n) {
  if (k < 0) throw DomainError("depth must be non-negative");
  if (n == 0) return 1.0;
  if (k == 0) return 0.0;
  return std::exp(static_cast<double>(n) * std::log1p(-pow2(-k)));
}

double epsilon1(int k) {
  const double kd = k;
  return kPi * kPi / (3.0 * pow2(2.0 * kd + 2.0)) *
         (pow2(kd) + 0.5 + pow2(kd + 2.0) / kPi +
          pow2(1.5 * kd + 2.0) / (kPi * std::sqrt(kPi)));
}

double epsilon2(int k, double p) {
  const double kd = k;
  return kPi * kPi / pow2(2.0 * kd + 3.0) *
         (pow2(kd) + 1.0 + pow2(kd + 2.0) / kPi * (p - 0.5) +
          pow2(1.5 * kd + 2.0) / kPi);
}

double epsilon_shallow(int k, double p) {
  return (6.0 * epsilon1(k) + epsilon2(k, p)) / 7.0;
}

double epsilon_nkp(std::uint64_t n, int k, double p) {
  const double a = (1.0 - std::exp(-2.0 * (p - 0.5) * (p - 0.5))) * pow2(-k);
  const double nd = static_cast<double>(n);
  return nd * std::exp(nd * std::log1p(-a));
}

double rho_kp(int k, double p) {
  const double by_variance = 1.0 - std::sqrt(4.0 * p * (1.0 - p));
  const double by_hoeffding = 1.0 - std::exp(-2.0 * (p - 0.5) * (p - 0.5));
  return pow2(-k) * std::min(by_variance, by_hoeffding);
}

BoundReport bound_single_tree_small_k(int k, std::uint64_t n, double p) {
  check_common(k, n, p);
  BoundReport r = make_report(Regime::single_tree_small_k, k, n, p);
  const double bias = r.constants["bias"];
  const double empty = r.constants["empty_cell_mass"];
  const double cells = pow2(k);
  const double n1 = static_cast<double>(n) + 1.0;
  r.upper = bias + cells / (2.0 * n1) + empty / 4.0;
  r.lower = bias + cells / (4.0 * n1) + empty / 4.0 * (1.0 - cells / n1);
  return r;
}

BoundReport bound_shallow_small_k(int k, std::uint64_t n, double p) {
  check_common(k, n, p);
  BoundReport r = make_report(Regime::shallow_small_k, k, n, p);
  const double bias = r.constants["bias"];
  const double empty = r.constants["empty_cell_mass"];
  const double nd = static_cast<double>(n);
  const double e1 = epsilon1(k);
  const double e2 = epsilon2(k, p);
  const double eps = (6.0 * e1 + e2) / 7.0;
  r.constants["epsilon1"] = e1;
  r.constants["epsilon2"] = e2;
  r.constants["epsilon_kp"] = eps;
  const double kd = k;
  r.lower = bias;
  r.upper = bias + pow2(kd / 2.0 + 3.0) * (p - 0.5) / std::sqrt(kPi * nd) +
            7.0 * pow2(2.0 * kd + 2.0) / (kPi * kPi * (nd + 1.0)) * (1.0 + eps) +
            (p * p + (1.0 - p) * (1.0 - p)) / 2.0 * empty;
  return r;
}

BoundReport bound_single_tree_large_k(int k, std::uint64_t n, double p) {
  check_common(k, n, p);
  BoundReport r = make_report(Regime::single_tree_large_k, k, n, p);
  const double empty = r.constants["empty_cell_mass"];
  const double var = p * (1.0 - p);
  const double n1 = static_cast<double>(n) + 1.0;
  const double second = p * p + (1.0 - p) * (1.0 - p);
  r.upper = pow2(k) * var / n1 + second * empty / 2.0;
  r.lower = pow2(k - 1) * var / n1 + (second - pow2(k) * var / n1) * empty / 2.0;
  return r;
}

BoundReport bound_shallow_large_k(int k, int k_star, std::uint64_t n_black,
                                  std::uint64_t n, double p) {
  check_common(k, n, p);
  if (k_star < 0 || k_star > 60) throw DomainError("k* out of range");
  if (k < k_star) throw DomainError("this regime needs k >= k*");
  const double cells = pow2(k_star);
  if (static_cast<double>(n_black) > cells)
    throw DomainError("number of black cells exceeds 2^k*");
  BoundReport r = make_report(Regime::shallow_large_k, k, n, p);
  const double empty = r.constants["empty_cell_mass"];
  const double nd = static_cast<double>(n);
  const double share = static_cast<double>(n_black) / cells;
  const double p_bar_sq = (share * p * p + (1.0 - share) * (1.0 - p) * (1.0 - p)) * empty;
  const double eps = epsilon_nkp(n, k, p);
  const double rho = rho_kp(k, p);
  r.constants["k_star"] = k_star;
  r.constants["n_black"] = static_cast<double>(n_black);
  r.constants["p_bar_B_sq"] = p_bar_sq;
  r.constants["epsilon_nkp"] = eps;
  r.constants["rho_kp"] = rho;
  const double var = p * (1.0 - p);
  r.upper = 2.0 * var / (nd + 1.0) + pow2(k + 1) * eps / nd + p_bar_sq;
  r.lower = 2.0 * var / nd -
            pow2(k + 3) * std::exp(nd * std::log1p(-rho)) / nd + p_bar_sq;
  r.lower_valid = nd >= pow2(k + 1) * (k + 1);
  return r;
}

RandomChessboardBounds bound_random_chessboard(int k, int k_star,
                                               std::uint64_t n_expected_black,
                                               std::uint64_t n, double p) {
  check_common(k, n, p);
  if (k_star > 60) throw DomainError("k* out of range");
  if (k >= k_star) throw DomainError("this regime needs k < k*");
  const double cells = pow2(k_star);
  if (n_expected_black < 1 || static_cast<double>(n_expected_black) > cells)
    throw DomainError("N must lie in [1, 2^k*]");
  const double q = static_cast<double>(n_expected_black) / cells;
  const double n1 = static_cast<double>(n) + 1.0;
  const double cross = 4.0 * (p - 0.5) * (p - 0.5) * q * (1.0 - q);
  const double inflate = 1.0 + pow2(-(k_star - k));
  const double white_sq = (1.0 - p) * (1.0 - p);

  RandomChessboardBounds out;
  BoundReport& tree = out.single_tree;
  tree = make_report(Regime::random_chessboard, k, n, p);
  const double empty = tree.constants["empty_cell_mass"];
  const double c = white_sq - q * (1.0 - 2.0 * p) - white_sq * pow2(k) / n1 -
                   cross * inflate;
  tree.constants["k_star"] = k_star;
  tree.constants["N"] = static_cast<double>(n_expected_black);
  tree.constants["black_share"] = q;
  tree.constants["tree_bias"] = cross;
  tree.constants["C"] = c;
  tree.upper = cross * inflate + pow2(k - 1) / n1 +
               (white_sq - q * (1.0 - 2.0 * p)) * empty;
  tree.lower = cross + pow2(k) * white_sq / n1 + c * empty;

  BoundReport& net = out.shallow_infinite;
  net.regime = Regime::random_chessboard;
  const double minority = std::min(q, 1.0 - q);
  net.constants["k"] = k;
  net.constants["k_star"] = k_star;
  net.constants["p"] = p;
  net.constants["N"] = static_cast<double>(n_expected_black);
  net.constants["black_share"] = q;
  net.constants["bias"] = (p - 0.5) * (p - 0.5);
  net.lower = (p - 0.5) * (p - 0.5) * minority * minority;
  net.upper = cross + p * p * minority;
  return out;
}

BoundReport bound_uniform_labels(int k, std::uint64_t n, double p) {
  if (k < 0 || k > 60) throw DomainError("depth k out of range");
  if (n < 1) throw DomainError("bounds need n >= 1");
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("p must lie in [0, 1]");
  BoundReport r;
  r.regime = Regime::uniform_labels;
  const double nd = static_cast<double>(n);
  const double var = p * (1.0 - p);
  const double empty = empty_cell_mass(k, n);
  r.constants["k"] = k;
  r.constants["p"] = p;
  r.constants["empty_cell_mass"] = empty;
  if (k == 0) {
    r.lower = r.upper = var / nd;
    return r;
  }
  r.lower = pow2(k) * var / nd + (p * p - pow2(k) / nd) * empty;
  r.upper = pow2(k + 1) * var / nd + p * p * empty;
  return r;
}

double lemma1_lower_bound(int k_star) {
  if (k_star < 1 || k_star > 60) throw DomainError("k* must lie in [1, 60]");
  const double cells = pow2(k_star);
  return (1.0 - 8.0 / (cells - 1.0)) / 48.0 + 9.0 / 24.0 * pow2(-cells);
}

}  // namespace treenet
