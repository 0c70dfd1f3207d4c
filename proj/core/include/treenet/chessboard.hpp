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

#ifndef TREENET_CHESSBOARD_HPP_
#define TREENET_CHESSBOARD_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "treenet/rng.hpp"

namespace treenet {

/// Labeled points stored row-major. Labels are 0/1 for classification data
/// and arbitrary reals in regression mode.
struct SampleSet {
  std::size_t dim = 0;
  std::vector<double> x;
  std::vector<double> y;

  SampleSet() = default;
  explicit SampleSet(std::size_t d) : dim(d) {}

  std::size_t size() const { return y.size(); }
  bool empty() const { return y.empty(); }
  std::span<const double> point(std::size_t i) const {
    return {x.data() + i * dim, dim};
  }
  void push_back(std::span<const double> point, double label);
};

/// Throws DomainError unless every coordinate lies in [0, 1).
void check_unit_cube(std::span<const double> x, std::size_t dim);

/// A regression function that is constant on each cell of the regular grid
/// with 2^k_star cells in [0,1)^dim (2^(k_star/dim) cells per axis).
///
/// Cells are indexed with coordinate 1 varying fastest:
/// i_1 + i_2 m + ... + i_d m^(d-1), with m the per-axis cell count.
class CellField {
 public:
  CellField(int k_star, int dim, std::vector<double> values);

  int k_star() const { return k_star_; }
  int dim() const { return dim_; }
  int bits_per_axis() const { return k_star_ / dim_; }
  std::uint64_t side() const { return std::uint64_t{1} << bits_per_axis(); }
  std::size_t cell_count() const { return values_.size(); }

  std::size_t cell_index(std::span<const double> x) const;
  double value(std::span<const double> x) const {
    return values_[cell_index(x)];
  }
  double value_at(std::size_t cell) const { return values_[cell]; }
  const std::vector<double>& values() const { return values_; }

 private:
  int k_star_;
  int dim_;
  std::vector<double> values_;
};

/// Generalized chessboard: each cell is black (P[Y=1] = p) or white
/// (P[Y=1] = 1 - p).
class ChessboardSpec {
 public:
  ChessboardSpec(int k_star, int dim, double p,
                 std::vector<std::uint8_t> coloring);

  /// Checker pattern: cell (i_1..i_d) is black iff i_1 + ... + i_d is even.
  static ChessboardSpec balanced(int k_star, int dim, double p);

  int k_star() const { return k_star_; }
  int dim() const { return dim_; }
  double p() const { return p_; }
  const std::vector<std::uint8_t>& coloring() const { return coloring_; }
  std::size_t n_black() const;
  std::size_t n_white() const { return coloring_.size() - n_black(); }

  std::size_t cell_index(std::span<const double> x) const;
  double regression_value(std::span<const double> x) const;
  CellField field() const;

 private:
  int k_star_;
  int dim_;
  double p_;
  std::vector<std::uint8_t> coloring_;
};

/// Chessboard whose cells are colored black i.i.d. with probability
/// expected_black / 2^k_star.
class RandomChessboardSpec {
 public:
  RandomChessboardSpec(int k_star, int dim, double p,
                       std::uint64_t expected_black);

  int k_star() const { return k_star_; }
  int dim() const { return dim_; }
  double p() const { return p_; }
  std::uint64_t expected_black() const { return expected_black_; }
  double black_probability() const;

  ChessboardSpec draw_coloring(Rng& rng) const;

 private:
  int k_star_;
  int dim_;
  double p_;
  std::uint64_t expected_black_;
};

/// Per-cell success probabilities P_cell in [0, 1].
class DiscretizedSpec {
 public:
  DiscretizedSpec(int k_star, int dim, std::vector<double> probabilities);

  /// P_cell drawn i.i.d. uniform on [0, 1].
  static DiscretizedSpec uniform_draw(int k_star, int dim, Rng& rng);

  int k_star() const { return field_.k_star(); }
  int dim() const { return field_.dim(); }
  const std::vector<double>& probabilities() const { return field_.values(); }
  const CellField& field() const { return field_; }

 private:
  CellField field_;
};

struct RealizedChessboard {
  ChessboardSpec spec;
  SampleSet samples;
};

/// X uniform on [0,1)^d, Y ~ Bernoulli(field value of X's cell).
/// Per sample the generator is consumed as d uniforms then one uniform for
/// the label.
SampleSet sample(const CellField& field, std::size_t n, Rng& rng);
SampleSet sample(const ChessboardSpec& spec, std::size_t n, std::uint64_t seed);
SampleSet sample(const DiscretizedSpec& spec, std::size_t n,
                 std::uint64_t seed);
/// Draws the coloring first, then the samples, from the same stream.
RealizedChessboard sample(const RandomChessboardSpec& spec, std::size_t n,
                          std::uint64_t seed);

/// CSV with header x1..xd,y; coordinates printed with 17 significant digits,
/// labels as integers when they are 0/1.
void write_samples_csv(std::ostream& out, const SampleSet& samples);

/// Parses a coloring file: '0'/'1' characters, whitespace and commas ignored.
std::vector<std::uint8_t> parse_coloring(std::istream& in);

}  // namespace treenet

#endif  // TREENET_CHESSBOARD_HPP_
