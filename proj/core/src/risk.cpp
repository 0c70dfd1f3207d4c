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

#include "treenet/risk.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "treenet/bounds.hpp"
#include "treenet/error.hpp"
#include "treenet/parallel.hpp"

namespace treenet {
namespace {

constexpr int kMaxLatticeBits = 26;

void check_family(const ModelFamily& family, int dim) {
  if (family.k < 0 || family.k > kMaxCenteredDepth)
    throw DomainError("model depth out of range");
  if (family.kind == ModelFamily::Kind::shallow)
    validate_schedule(family.schedule, static_cast<std::size_t>(dim));
}

double mean_of(const std::vector<double>& v) {
  long double total = 0.0L;
  for (double x : v) total += x;
  return static_cast<double>(total / static_cast<long double>(v.size()));
}

template <typename FieldFor>
RiskEstimate run_mc(const ModelFamily& family, int k_star, int dim,
                    std::size_t n, std::size_t repetitions, std::uint64_t seed,
                    unsigned jobs, FieldFor field_for) {
  if (repetitions < 1) throw DomainError("repetitions must be >= 1");
  check_family(family, dim);
  const RiskLattice lattice(k_star, dim, family);
  RiskEstimate est;
  est.repetitions = repetitions;
  est.per_repetition.assign(repetitions, 0.0);
  const auto d = static_cast<std::size_t>(dim);
  parallel_for(repetitions, jobs, [&](std::size_t r) {
    Rng rng(seed, r);
    const CellField field = field_for(rng);
    const SampleSet data = sample(field, n, rng);
    if (family.kind == ModelFamily::Kind::single_tree) {
      est.per_repetition[r] = lattice.risk(CenteredTree::fit(family.k, d, data), field);
    } else {
      est.per_repetition[r] = lattice.risk(
          ShallowTreeNetwork::fit(family.k, d, family.schedule, data, family.options),
          field);
    }
  });
  est.mean = mean_of(est.per_repetition);
  if (repetitions > 1) {
    long double ss = 0.0L;
    for (double v : est.per_repetition) ss += (v - est.mean) * (v - est.mean);
    const double sd = std::sqrt(static_cast<double>(ss / (repetitions - 1)));
    est.standard_error = sd / std::sqrt(static_cast<double>(repetitions));
  }
  std::uint64_t digest = mix64(seed);
  for (std::size_t r = 0; r < repetitions; ++r) digest = mix64(digest ^ mix64(r));
  est.seeds_digest = digest;
  return est;
}

}  // namespace

std::string ModelFamily::name() const {
  if (kind == Kind::single_tree) return "single_tree(k=" + std::to_string(k) + ")";
  return "shallow(k=" + std::to_string(k) + "," + format_schedule(schedule) + ")";
}

RiskLattice::RiskLattice(int k_star, int dim, const ModelFamily& family)
    : dim_(dim), k_(family.k) {
  if (dim < 1 || k_star < 0 || k_star % dim != 0)
    throw DomainError("field grid needs k* divisible by d");
  check_family(family, dim);
  const int field_bits = k_star / dim;
  const auto d = static_cast<std::size_t>(dim);
  std::vector<int> bits(d);
  int total = 0;
  for (std::size_t a = 0; a < d; ++a) {
    bits[a] = std::max(field_bits, cuts_on_axis(family.k, d, a));
    if (family.kind == ModelFamily::Kind::shallow)
      bits[a] = std::max(bits[a], raw_cuts_on_axis(family.schedule, a));
    total += bits[a];
  }
  if (total > kMaxLatticeBits)
    throw DomainError("refinement lattice too fine (" + std::to_string(total) +
                      " bits)");
  const std::size_t count = std::size_t{1} << total;
  const std::size_t side = std::size_t{1} << field_bits;
  centers_.resize(count * d);
  field_cell_.resize(count);
  encoder_leaf_.resize(count);
  for (std::size_t c = 0; c < count; ++c) {
    std::size_t rest = c, cell = 0, stride = 1;
    double* x = centers_.data() + c * d;
    for (std::size_t a = 0; a < d; ++a) {
      const std::size_t i = rest & ((std::size_t{1} << bits[a]) - 1);
      rest >>= bits[a];
      x[a] = (static_cast<double>(i) + 0.5) / static_cast<double>(std::size_t{1} << bits[a]);
      cell += (i >> (bits[a] - field_bits)) * stride;
      stride *= side;
    }
    field_cell_[c] = cell;
    encoder_leaf_[c] = leaf_index_unchecked(family.k, d, x);
  }
}

double RiskLattice::risk(const CenteredTree& tree, const CellField& field) const {
  if (tree.dim() != static_cast<std::size_t>(dim_) || field.dim() != dim_ ||
      tree.depth() != k_)
    throw DomainError("model and field do not match the lattice");
  long double total = 0.0L;
  for (std::size_t c = 0; c < size(); ++c) {
    const double e = tree.mean(encoder_leaf_[c]) - field.value_at(field_cell_[c]);
    total += e * e;
  }
  return static_cast<double>(total / static_cast<long double>(size()));
}

double RiskLattice::risk(const ShallowTreeNetwork& network,
                         const CellField& field) const {
  const CenteredTree& enc = network.encoder();
  if (enc.dim() != static_cast<std::size_t>(dim_) || field.dim() != dim_ ||
      enc.depth() != k_)
    throw DomainError("model and field do not match the lattice");
  if (network.schedule().empty()) return risk(enc, field);
  long double total = 0.0L;
  for (std::size_t c = 0; c < size(); ++c) {
    const auto g = network.group_of_leaf_point(encoder_leaf_[c], center(c));
    const double pred = g ? network.group_mean(*g) : 0.0;
    const double e = pred - field.value_at(field_cell_[c]);
    total += e * e;
  }
  return static_cast<double>(total / static_cast<long double>(size()));
}

double exact_conditional_risk(const CenteredTree& tree, const CellField& field) {
  if (tree.dim() != static_cast<std::size_t>(field.dim()))
    throw DomainError("model and field dimensions differ");
  return RiskLattice(field.k_star(), field.dim(), ModelFamily::single_tree(tree.depth()))
      .risk(tree, field);
}

double exact_conditional_risk(const ShallowTreeNetwork& network,
                              const CellField& field) {
  const CenteredTree& enc = network.encoder();
  if (enc.dim() != static_cast<std::size_t>(field.dim()))
    throw DomainError("model and field dimensions differ");
  const ModelFamily family =
      ModelFamily::shallow(enc.depth(), network.schedule(), network.options());
  return RiskLattice(field.k_star(), field.dim(), family).risk(network, field);
}

RiskEstimate mc_risk(const ModelFamily& family, const CellField& field,
                     std::size_t n, std::size_t repetitions, std::uint64_t seed,
                     unsigned jobs) {
  return run_mc(family, field.k_star(), field.dim(), n, repetitions, seed, jobs,
                [&](Rng&) -> const CellField& { return field; });
}

RiskEstimate mc_risk(const ModelFamily& family, const RandomChessboardSpec& spec,
                     std::size_t n, std::size_t repetitions, std::uint64_t seed,
                     unsigned jobs) {
  return run_mc(family, spec.k_star(), spec.dim(), n, repetitions, seed, jobs,
                [&](Rng& rng) { return spec.draw_coloring(rng).field(); });
}

double infinite_sample_risk(const CellField& field, const ModelFamily& family) {
  const RiskLattice lattice(field.k_star(), field.dim(), family);
  const std::size_t leaves = std::size_t{1} << family.k;
  std::vector<long double> leaf_sum(leaves, 0.0L);
  std::vector<std::size_t> leaf_size(leaves, 0);
  for (std::size_t c = 0; c < lattice.size(); ++c) {
    leaf_sum[lattice.encoder_leaf(c)] += field.value_at(lattice.field_cell(c));
    ++leaf_size[lattice.encoder_leaf(c)];
  }
  std::vector<double> leaf_mean(leaves, 0.0);
  for (std::size_t l = 0; l < leaves; ++l)
    if (leaf_size[l] > 0)
      leaf_mean[l] = static_cast<double>(leaf_sum[l] / static_cast<long double>(leaf_size[l]));

  std::vector<double> pred(lattice.size());
  if (family.kind == ModelFamily::Kind::single_tree || family.schedule.empty()) {
    for (std::size_t c = 0; c < lattice.size(); ++c)
      pred[c] = leaf_mean[lattice.encoder_leaf(c)];
  } else {
    const std::size_t groups = std::size_t{1} << family.schedule.size();
    std::vector<long double> group_sum(groups, 0.0L);
    std::vector<std::size_t> group_size(groups, 0);
    std::vector<std::size_t> group(lattice.size());
    for (std::size_t c = 0; c < lattice.size(); ++c) {
      group[c] = route_second_layer(family.schedule, lattice.center(c),
                                    leaf_mean[lattice.encoder_leaf(c)]);
      group_sum[group[c]] += field.value_at(lattice.field_cell(c));
      ++group_size[group[c]];
    }
    for (std::size_t c = 0; c < lattice.size(); ++c)
      pred[c] = static_cast<double>(group_sum[group[c]] /
                                    static_cast<long double>(group_size[group[c]]));
  }
  long double total = 0.0L;
  for (std::size_t c = 0; c < lattice.size(); ++c) {
    const double e = pred[c] - field.value_at(lattice.field_cell(c));
    total += e * e;
  }
  return static_cast<double>(total / static_cast<long double>(lattice.size()));
}

std::uint64_t schedule_count(int dim, int max_kprime) {
  if (dim < 1 || max_kprime < 0) throw DomainError("invalid schedule space");
  const auto base = static_cast<std::uint64_t>(dim) + 1;
  std::uint64_t total = 0, level = 1;
  constexpr auto kCap = std::numeric_limits<std::uint64_t>::max() / 2;
  for (int i = 0; i <= max_kprime; ++i) {
    total += level;
    if (total > kCap || level > kCap / base) return kCap;
    level *= base;
  }
  return total;
}

ScheduleSearch lemma2_schedule_search(const CellField& field, int k,
                                      int max_kprime, std::uint64_t budget) {
  if (max_kprime < 0 || max_kprime > kMaxCenteredDepth)
    throw DomainError("max k' out of range");
  const std::uint64_t count = schedule_count(field.dim(), max_kprime);
  if (count > budget) throw BudgetExceeded(count, budget);
  const int symbols = field.dim() + 1;

  ScheduleSearch out;
  out.table.reserve(count);
  for (int length = 0; length <= max_kprime; ++length) {
    std::vector<int> digits(static_cast<std::size_t>(length), 0);
    for (;;) {
      Schedule schedule;
      for (int s : digits)
        schedule.push_back(s == 0 ? SplitDirective::new_feature() : SplitDirective::raw(s));
      const double risk = infinite_sample_risk(
          field, length == 0 ? ModelFamily::single_tree(k)
                             : ModelFamily::shallow(k, schedule));
      out.table.push_back({std::move(schedule), risk});
      int pos = length - 1;
      while (pos >= 0 && ++digits[static_cast<std::size_t>(pos)] == symbols)
        digits[static_cast<std::size_t>(pos--)] = 0;
      if (pos < 0) break;
    }
  }
  // The empty schedule is the baseline row; it only competes when no
  // second-layer cut is allowed.
  std::size_t best = max_kprime == 0 ? 0 : 1;
  for (std::size_t i = best + 1; i < out.table.size(); ++i)
    if (out.table[i].risk < out.table[best].risk - 1e-15) best = i;
  out.best = out.table[best].schedule;
  out.best_risk = out.table[best].risk;
  return out;
}

Lemma1Check lemma1_check(int k_star, std::size_t draws, std::uint64_t seed,
                         int dim, unsigned jobs) {
  if (draws < 1) throw DomainError("draws must be >= 1");
  Lemma1Check out;
  out.k_star = k_star;
  out.dim = dim;
  out.draws = draws;
  out.bound = lemma1_lower_bound(k_star);
  std::vector<double> shallow(draws), single(draws);
  const ModelFamily net = ModelFamily::shallow(k_star, {SplitDirective::new_feature()});
  const ModelFamily tree = ModelFamily::single_tree(k_star);
  parallel_for(draws, jobs, [&](std::size_t r) {
    Rng rng(seed, r);
    const DiscretizedSpec spec = DiscretizedSpec::uniform_draw(k_star, dim, rng);
    shallow[r] = infinite_sample_risk(spec.field(), net);
    single[r] = infinite_sample_risk(spec.field(), tree);
  });
  out.mean_shallow_risk = mean_of(shallow);
  if (draws > 1) {
    long double ss = 0.0L;
    for (double v : shallow)
      ss += (v - out.mean_shallow_risk) * (v - out.mean_shallow_risk);
    out.standard_error = std::sqrt(static_cast<double>(ss / (draws - 1)) /
                                   static_cast<double>(draws));
  }
  out.max_single_tree_risk = *std::max_element(single.begin(), single.end());
  out.holds = out.mean_shallow_risk >= out.bound;
  return out;
}

}  // namespace treenet
