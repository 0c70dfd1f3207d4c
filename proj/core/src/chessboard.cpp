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

#include "treenet/chessboard.hpp"

#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <string>

#include "treenet/error.hpp"
#include "treenet/format.hpp"

namespace treenet {
namespace {

void check_grid(int k_star, int dim) {
  if (dim < 1) throw DomainError("dimension must be positive");
  if (k_star < 0) throw DomainError("k_star must be non-negative");
  if (k_star % dim != 0)
    throw DomainError("k_star must be a multiple of the dimension");
  if (k_star > 40) throw DomainError("k_star too large for a dense grid");
}

void check_label_probability(double p) {
  // p = 1/2 is admitted so that the degenerate "constant regression" board
  // can be represented; the risk bounds require p > 1/2 themselves.
  if (!(p >= 0.5 && p <= 1.0)) throw DomainError("p must lie in [1/2, 1]");
}

}  // namespace

void SampleSet::push_back(std::span<const double> point, double label) {
  if (point.size() != dim) throw DataError("sample dimension mismatch");
  x.insert(x.end(), point.begin(), point.end());
  y.push_back(label);
}

void check_unit_cube(std::span<const double> x, std::size_t dim) {
  if (x.size() != dim)
    throw DomainError("point has " + std::to_string(x.size()) +
                      " coordinates, expected " + std::to_string(dim));
  for (double v : x) {
    if (!(v >= 0.0 && v < 1.0))
      throw DomainError("coordinate " + format_double(v) +
                        " outside [0, 1)");
  }
}

CellField::CellField(int k_star, int dim, std::vector<double> values)
    : k_star_(k_star), dim_(dim), values_(std::move(values)) {
  check_grid(k_star, dim);
  if (values_.size() != (std::size_t{1} << k_star))
    throw DomainError("cell field needs 2^k_star values");
}

std::size_t CellField::cell_index(std::span<const double> x) const {
  check_unit_cube(x, static_cast<std::size_t>(dim_));
  const std::uint64_t m = side();
  const double scale = static_cast<double>(m);
  std::size_t index = 0;
  std::size_t stride = 1;
  for (int j = 0; j < dim_; ++j) {
    // x * 2^b is exact, so floor never rounds a point into the next cell.
    const auto i = static_cast<std::size_t>(std::floor(x[j] * scale));
    index += i * stride;
    stride *= m;
  }
  return index;
}

ChessboardSpec::ChessboardSpec(int k_star, int dim, double p,
                               std::vector<std::uint8_t> coloring)
    : k_star_(k_star), dim_(dim), p_(p), coloring_(std::move(coloring)) {
  check_grid(k_star, dim);
  check_label_probability(p);
  if (coloring_.size() != (std::size_t{1} << k_star))
    throw DomainError("coloring length must be 2^k_star");
  for (auto& c : coloring_) {
    if (c > 1) throw DomainError("coloring entries must be 0 or 1");
  }
}

ChessboardSpec ChessboardSpec::balanced(int k_star, int dim, double p) {
  check_grid(k_star, dim);
  const std::size_t cells = std::size_t{1} << k_star;
  const std::size_t m = std::size_t{1} << (k_star / dim);
  std::vector<std::uint8_t> coloring(cells);
  for (std::size_t cell = 0; cell < cells; ++cell) {
    std::size_t rest = cell;
    std::size_t coordinate_sum = 0;
    for (int j = 0; j < dim; ++j) {
      coordinate_sum += rest % m;
      rest /= m;
    }
    coloring[cell] = coordinate_sum % 2 == 0 ? 1 : 0;
  }
  return ChessboardSpec(k_star, dim, p, std::move(coloring));
}

std::size_t ChessboardSpec::n_black() const {
  return static_cast<std::size_t>(
      std::accumulate(coloring_.begin(), coloring_.end(), std::size_t{0}));
}

std::size_t ChessboardSpec::cell_index(std::span<const double> x) const {
  check_unit_cube(x, static_cast<std::size_t>(dim_));
  const std::size_t m = std::size_t{1} << (k_star_ / dim_);
  std::size_t index = 0;
  std::size_t stride = 1;
  for (int j = 0; j < dim_; ++j) {
    index += static_cast<std::size_t>(
                 std::floor(x[j] * static_cast<double>(m))) *
             stride;
    stride *= m;
  }
  return index;
}

double ChessboardSpec::regression_value(std::span<const double> x) const {
  return coloring_[cell_index(x)] ? p_ : 1.0 - p_;
}

CellField ChessboardSpec::field() const {
  std::vector<double> values(coloring_.size());
  for (std::size_t i = 0; i < values.size(); ++i)
    values[i] = coloring_[i] ? p_ : 1.0 - p_;
  return CellField(k_star_, dim_, std::move(values));
}

RandomChessboardSpec::RandomChessboardSpec(int k_star, int dim, double p,
                                           std::uint64_t expected_black)
    : k_star_(k_star), dim_(dim), p_(p), expected_black_(expected_black) {
  check_grid(k_star, dim);
  check_label_probability(p);
  if (expected_black < 1 || expected_black > (std::uint64_t{1} << k_star))
    throw DomainError("N must lie in {1, ..., 2^k_star}");
}

double RandomChessboardSpec::black_probability() const {
  return static_cast<double>(expected_black_) /
         std::ldexp(1.0, k_star_);
}

ChessboardSpec RandomChessboardSpec::draw_coloring(Rng& rng) const {
  const double q = black_probability();
  std::vector<std::uint8_t> coloring(std::size_t{1} << k_star_);
  for (auto& c : coloring) c = rng.bernoulli(q) ? 1 : 0;
  return ChessboardSpec(k_star_, dim_, p_, std::move(coloring));
}

DiscretizedSpec::DiscretizedSpec(int k_star, int dim,
                                 std::vector<double> probabilities)
    : field_(k_star, dim, std::move(probabilities)) {
  for (double v : field_.values()) {
    if (!(v >= 0.0 && v <= 1.0))
      throw DomainError("cell probabilities must lie in [0, 1]");
  }
}

DiscretizedSpec DiscretizedSpec::uniform_draw(int k_star, int dim, Rng& rng) {
  check_grid(k_star, dim);
  std::vector<double> probabilities(std::size_t{1} << k_star);
  for (auto& v : probabilities) v = rng.uniform();
  return DiscretizedSpec(k_star, dim, std::move(probabilities));
}

SampleSet sample(const CellField& field, std::size_t n, Rng& rng) {
  const auto dim = static_cast<std::size_t>(field.dim());
  const std::size_t m = field.side();
  SampleSet out(dim);
  out.x.resize(n * dim);
  out.y.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    double* point = out.x.data() + i * dim;
    std::size_t cell = 0;
    std::size_t stride = 1;
    for (std::size_t j = 0; j < dim; ++j) {
      point[j] = rng.uniform();
      cell += static_cast<std::size_t>(point[j] * static_cast<double>(m)) *
              stride;
      stride *= m;
    }
    out.y[i] = rng.bernoulli(field.value_at(cell)) ? 1.0 : 0.0;
  }
  return out;
}

SampleSet sample(const ChessboardSpec& spec, std::size_t n,
                 std::uint64_t seed) {
  Rng rng(seed);
  return sample(spec.field(), n, rng);
}

SampleSet sample(const DiscretizedSpec& spec, std::size_t n,
                 std::uint64_t seed) {
  Rng rng(seed);
  return sample(spec.field(), n, rng);
}

RealizedChessboard sample(const RandomChessboardSpec& spec, std::size_t n,
                          std::uint64_t seed) {
  Rng rng(seed);
  ChessboardSpec realized = spec.draw_coloring(rng);
  SampleSet samples = sample(realized.field(), n, rng);
  return {std::move(realized), std::move(samples)};
}

void write_samples_csv(std::ostream& out, const SampleSet& samples) {
  for (std::size_t j = 0; j < samples.dim; ++j) out << 'x' << (j + 1) << ',';
  out << "y\n";
  for (std::size_t i = 0; i < samples.size(); ++i) {
    for (double v : samples.point(i)) out << format_double(v) << ',';
    const double label = samples.y[i];
    if (label == 0.0 || label == 1.0)
      out << static_cast<int>(label);
    else
      out << format_double(label);
    out << '\n';
  }
}

std::vector<std::uint8_t> parse_coloring(std::istream& in) {
  std::vector<std::uint8_t> coloring;
  char c;
  while (in.get(c)) {
    if (c == '0' || c == '1') {
      coloring.push_back(static_cast<std::uint8_t>(c - '0'));
    } else if (c != ',' && c != ' ' && c != '\n' && c != '\r' && c != '\t') {
      throw DataError(std::string("unexpected character '") + c +
                      "' in coloring file");
    }
  }
  return coloring;
}

}  // namespace treenet
