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

#include "treenet/shallow_network.hpp"

#include <array>
#include <charconv>
#include <numeric>

#include "treenet/error.hpp"

namespace treenet {
namespace {

constexpr std::size_t kMaxRawAxes = 64;
constexpr std::size_t kMaxScheduleDepth = 24;

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace

Schedule parse_schedule(std::string_view text) {
  Schedule schedule;
  text = trim(text);
  if (text.empty() || text == "none") return schedule;
  while (!text.empty()) {
    const std::size_t comma = text.find(',');
    const std::string_view item = trim(text.substr(0, comma));
    text = comma == std::string_view::npos ? std::string_view{}
                                           : text.substr(comma + 1);
    if (item == "new") {
      schedule.push_back(SplitDirective::new_feature());
    } else if (item.starts_with("raw:")) {
      const std::string_view digits = item.substr(4);
      int coordinate = 0;
      const auto [ptr, ec] =
          std::from_chars(digits.data(), digits.data() + digits.size(), coordinate);
      if (ec != std::errc() || ptr != digits.data() + digits.size() || coordinate < 1)
        throw DomainError("invalid raw split '" + std::string(item) + "'");
      schedule.push_back(SplitDirective::raw(coordinate));
    } else {
      throw DomainError("invalid split directive '" + std::string(item) +
                        "' (expected 'new' or 'raw:<j>')");
    }
  }
  return schedule;
}

std::string format_schedule(const Schedule& schedule) {
  std::string out;
  for (const auto& directive : schedule) {
    if (!out.empty()) out += ',';
    out += directive.is_raw() ? "raw:" + std::to_string(directive.coordinate)
                              : std::string("new");
  }
  return out.empty() ? std::string("none") : out;
}

void validate_schedule(const Schedule& schedule, std::size_t dim) {
  if (schedule.size() > kMaxScheduleDepth)
    throw DomainError("second-layer schedule too deep");
  for (const auto& directive : schedule) {
    if (directive.is_raw() &&
        (directive.coordinate < 1 ||
         static_cast<std::size_t>(directive.coordinate) > dim ||
         static_cast<std::size_t>(directive.coordinate) > kMaxRawAxes))
      throw DomainError("raw split coordinate " +
                        std::to_string(directive.coordinate) +
                        " outside [1, " + std::to_string(dim) + "]");
  }
}

int raw_cuts_on_axis(const Schedule& schedule, std::size_t axis) {
  int cuts = 0;
  for (const auto& directive : schedule)
    cuts += directive.is_raw() &&
            static_cast<std::size_t>(directive.coordinate) == axis + 1;
  return cuts;
}

std::size_t route_second_layer(const Schedule& schedule, const double* x,
                               double encoder_mean) {
  std::array<int, kMaxRawAxes> cuts{};
  double lo = 0.0, hi = 1.0;
  std::size_t leaf = 0;
  for (const auto& directive : schedule) {
    std::size_t bit;
    if (directive.is_raw()) {
      const auto axis = static_cast<std::size_t>(directive.coordinate - 1);
      const int level = cuts[axis]++;
      bit = static_cast<std::uint64_t>(
                x[axis] * static_cast<double>(std::uint64_t{2} << level)) &
            1u;
    } else {
      const double mid = 0.5 * (lo + hi);
      bit = encoder_mean >= mid ? 1 : 0;
      (bit ? lo : hi) = mid;
    }
    leaf = (leaf << 1) | bit;
  }
  return leaf;
}

ShallowTreeNetwork::ShallowTreeNetwork(CenteredTree encoder, Schedule schedule,
                                       ShallowOptions options)
    : encoder_(std::move(encoder)),
      schedule_(std::move(schedule)),
      options_(options) {
  if (!schedule_.empty()) {
    group_counts_.assign(std::size_t{1} << schedule_.size(), 0);
    group_sums_.assign(std::size_t{1} << schedule_.size(), 0.0);
  }
}

ShallowTreeNetwork ShallowTreeNetwork::fit(int k, std::size_t dim,
                                           Schedule schedule,
                                           const SampleSet& data,
                                           ShallowOptions options) {
  validate_schedule(schedule, dim);
  ShallowTreeNetwork net(CenteredTree::fit(k, dim, data), std::move(schedule),
                         options);
  if (net.schedule_.empty()) return net;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const double* x = data.x.data() + i * dim;
    const std::size_t leaf = leaf_index_unchecked(k, dim, x);
    const std::size_t g =
        route_second_layer(net.schedule_, x, net.encoder_.mean(leaf));
    ++net.group_counts_[g];
    net.group_sums_[g] += data.y[i];
  }
  return net;
}

std::optional<std::size_t> ShallowTreeNetwork::group_of_leaf_point(
    std::size_t leaf, const double* x) const {
  if (schedule_.empty()) return std::nullopt;
  if (options_.exclude_empty && encoder_.count(leaf) == 0) return std::nullopt;
  return route_second_layer(schedule_, x, encoder_.mean(leaf));
}

std::optional<std::size_t> ShallowTreeNetwork::group_of(
    std::span<const double> x) const {
  return group_of_leaf_point(encoder_.leaf_of(x), x.data());
}

double ShallowTreeNetwork::predict(std::span<const double> x) const {
  const std::size_t leaf = encoder_.leaf_of(x);
  if (schedule_.empty()) return encoder_.mean(leaf);
  const auto g = group_of_leaf_point(leaf, x.data());
  return g ? group_mean(*g) : 0.0;
}

nlohmann::json ShallowTreeNetwork::to_json() const {
  return {{"encoder", encoder_.to_json()},
          {"schedule", format_schedule(schedule_)},
          {"exclude_empty", options_.exclude_empty},
          {"group_counts", group_counts_},
          {"group_sums", group_sums_}};
}

std::vector<double> CartNetwork::augment(std::span<const double> x) const {
  std::vector<double> out(x.begin(), x.end());
  const auto encoded = first.predict(x);
  out.insert(out.end(), encoded.begin(), encoded.end());
  return out;
}

std::span<const double> CartNetwork::predict(std::span<const double> x) const {
  if (passthrough) return first.predict(x);
  return second.predict(augment(x));
}

std::size_t CartNetwork::predict_class(std::span<const double> x) const {
  return argmax(predict(x));
}

double CartNetwork::predict_value(std::span<const double> x) const {
  return predict(x)[0];
}

std::vector<double> augment_features(const CartTree& first,
                                     const DataView& data) {
  const std::size_t width = data.n_features + first.output_width();
  std::vector<double> out;
  out.reserve(data.size() * width);
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto row = data.row(i);
    out.insert(out.end(), row.begin(), row.end());
    const auto encoded = first.predict(row);
    out.insert(out.end(), encoded.begin(), encoded.end());
  }
  return out;
}

CartNetwork fit_cart_network(const DataView& data, const CartParams& first,
                             const CartParams& second, std::uint64_t seed) {
  if (data.size() == 0) throw DataError("cannot fit a network on empty data");
  std::vector<std::size_t> rows(data.size());
  std::iota(rows.begin(), rows.end(), std::size_t{0});
  const Rng root(seed);
  CartTree first_tree = fit_cart(data, rows, first, root.split(1));
  const std::vector<double> augmented = augment_features(first_tree, data);
  const DataView second_view{augmented, data.targets,
                             data.n_features + first_tree.output_width()};
  CartTree second_tree = fit_cart(second_view, rows, second, root.split(2));
  return CartNetwork{std::move(first_tree), std::move(second_tree),
                     second.max_depth == 0};
}

CartNetworkReport describe(const CartNetwork& network) {
  CartNetworkReport report;
  for (const auto& node : network.second.nodes()) {
    if (!node.is_leaf()) report.split_features.push_back(node.feature);
  }
  report.root_feature = network.second.root_feature();
  if (report.root_feature) {
    report.root_threshold = network.second.nodes().front().threshold;
    report.root_on_augmented = *report.root_feature >= network.raw_dim();
  }
  return report;
}

nlohmann::json CartNetworkReport::to_json() const {
  nlohmann::json j = {{"split_features", split_features},
                      {"root_on_augmented", root_on_augmented}};
  if (root_feature) {
    j["root_feature"] = *root_feature;
    j["root_threshold"] = root_threshold;
  } else {
    j["root_feature"] = nullptr;
  }
  return j;
}

double score_network(const CartNetwork& network, const DataView& data) {
  if (network.first.task() == Task::classification) {
    std::vector<std::size_t> predicted(data.size());
    for (std::size_t i = 0; i < data.size(); ++i)
      predicted[i] = network.predict_class(data.row(i));
    return accuracy_score(predicted, data.targets);
  }
  std::vector<double> predicted(data.size());
  for (std::size_t i = 0; i < data.size(); ++i)
    predicted[i] = network.predict_value(data.row(i));
  return r2_score(predicted, data.targets);
}

}  // namespace treenet
