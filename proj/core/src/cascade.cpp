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

#include "treenet/cascade.hpp"

#include <algorithm>

#include "treenet/error.hpp"

namespace treenet {
namespace {

// Concatenates each forest's output for every row of `input`, optionally
// preceded by the raw row.
std::vector<double> layer_features(const std::vector<Forest>& forests,
                                   const DataView& raw,
                                   const std::vector<double>& input,
                                   std::size_t input_width, bool pass_raw,
                                   std::size_t forest_width) {
  const std::size_t out_width =
      (pass_raw ? raw.n_features : 0) + forests.size() * forest_width;
  std::vector<double> out(raw.size() * out_width);
  for (std::size_t i = 0; i < raw.size(); ++i) {
    double* dst = out.data() + i * out_width;
    if (pass_raw) {
      const auto row = raw.row(i);
      dst = std::copy(row.begin(), row.end(), dst);
    }
    const std::span<const double> in(input.data() + i * input_width, input_width);
    for (const Forest& forest : forests) {
      forest.predict_into(in, {dst, forest_width});
      dst += forest_width;
    }
  }
  return out;
}

std::vector<double> average_outputs(const std::vector<Forest>& forests,
                                    std::span<const double> input,
                                    std::size_t width) {
  std::vector<double> sum(width, 0.0), buffer(width);
  for (const Forest& forest : forests) {
    forest.predict_into(input, buffer);
    for (std::size_t c = 0; c < width; ++c) sum[c] += buffer[c];
  }
  const double n = static_cast<double>(forests.size());
  for (double& v : sum) v /= n;
  return sum;
}

double score_layer(const std::vector<Forest>& forests, const DataView& raw,
                   const std::vector<double>& input, std::size_t input_width,
                   Task task, std::size_t width) {
  const std::span<const double> all(input);
  if (task == Task::classification) {
    std::vector<std::size_t> predicted(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i)
      predicted[i] = argmax(average_outputs(
          forests, all.subspan(i * input_width, input_width), width));
    return accuracy_score(predicted, raw.targets);
  }
  std::vector<double> predicted(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i)
    predicted[i] = average_outputs(
        forests, all.subspan(i * input_width, input_width), width)[0];
  return r2_score(predicted, raw.targets);
}

ForestSpec make_spec(ForestKind kind, std::size_t trees, int depth) {
  ForestSpec spec;
  spec.kind = kind;
  spec.n_trees = trees;
  spec.max_depth = depth;
  spec.bootstrap = kind == ForestKind::breiman;
  return spec;
}

}  // namespace

CascadeConfig CascadeConfig::default_df() {
  CascadeConfig config;
  config.max_layers = 20;
  config.stop_patience = 3;
  for (int i = 0; i < 4; ++i) {
    config.forests.push_back(make_spec(ForestKind::breiman, 500, -1));
    config.forests.push_back(make_spec(ForestKind::completely_random, 500, -1));
  }
  return config;
}

CascadeConfig CascadeConfig::light_df() {
  CascadeConfig config;
  config.max_layers = 2;
  config.stop_patience = 3;
  config.forests.push_back(make_spec(ForestKind::breiman, 50, 30));
  config.forests.push_back(make_spec(ForestKind::completely_random, 50, 30));
  return config;
}

void CascadeConfig::validate() const {
  if (max_layers < 1) throw DomainError("a cascade needs at least one layer");
  if (stop_patience < 1) throw DomainError("stop_patience must be >= 1");
  if (forests.empty()) throw DomainError("a cascade layer needs a forest");
  for (const auto& f : forests) f.validate();
}

nlohmann::json CascadeConfig::to_json() const {
  nlohmann::json list = nlohmann::json::array();
  for (const auto& f : forests) list.push_back(f.to_json());
  return {{"max_layers", max_layers},
          {"stop_patience", stop_patience},
          {"pass_raw", pass_raw},
          {"forests", std::move(list)}};
}

CascadeConfig CascadeConfig::from_json(const nlohmann::json& j) {
  CascadeConfig config;
  if (j.contains("preset")) {
    const auto preset = j.at("preset").get<std::string>();
    if (preset == "default_df") {
      config = default_df();
    } else if (preset == "light_df") {
      config = light_df();
    } else {
      throw DataError("unknown cascade preset '" + preset + "'");
    }
  } else if (!j.contains("forests")) {
    throw DataError("cascade config needs 'preset' or 'forests'");
  }
  config.max_layers = j.value("max_layers", config.max_layers);
  config.stop_patience = j.value("stop_patience", config.stop_patience);
  config.pass_raw = j.value("pass_raw", config.pass_raw);
  if (j.contains("forests")) {
    config.forests.clear();
    for (const auto& f : j.at("forests")) config.forests.push_back(ForestSpec::from_json(f));
  }
  config.validate();
  return config;
}

std::size_t CascadeModel::input_width(std::size_t t) const {
  if (t <= 1) return raw_dim_;
  return (config_.pass_raw ? raw_dim_ : 0) + config_.forests.size() * forest_width();
}

std::vector<double> CascadeModel::next_input(std::size_t t,
                                             std::span<const double> raw,
                                             std::span<const double> input) const {
  std::vector<double> out;
  out.reserve(input_width(t + 1));
  if (config_.pass_raw) out.assign(raw.begin(), raw.end());
  std::vector<double> buffer(forest_width());
  for (const Forest& forest : layer(t)) {
    forest.predict_into(input, buffer);
    out.insert(out.end(), buffer.begin(), buffer.end());
  }
  return out;
}

std::vector<double> CascadeModel::predict_at_layer(std::size_t t,
                                                   std::span<const double> x) const {
  if (t < 1 || t > layers_.size())
    throw DomainError("layer " + std::to_string(t) + " outside [1, " +
                      std::to_string(layers_.size()) + "]");
  if (x.size() != raw_dim_) throw DomainError("input width mismatch");
  std::vector<double> input(x.begin(), x.end());
  for (std::size_t s = 1; s < t; ++s) input = next_input(s, x, input);
  return average_outputs(layer(t), input, forest_width());
}

std::size_t CascadeModel::predict_class(std::span<const double> x) const {
  return argmax(predict(x));
}

double CascadeModel::predict_value(std::span<const double> x) const {
  return predict(x)[0];
}

double CascadeModel::score_at_layer(std::size_t t, const DataView& data) const {
  if (task_ == Task::classification) {
    std::vector<std::size_t> predicted(data.size());
    for (std::size_t i = 0; i < data.size(); ++i)
      predicted[i] = argmax(predict_at_layer(t, data.row(i)));
    return accuracy_score(predicted, data.targets);
  }
  std::vector<double> predicted(data.size());
  for (std::size_t i = 0; i < data.size(); ++i)
    predicted[i] = predict_at_layer(t, data.row(i))[0];
  return r2_score(predicted, data.targets);
}

CascadeModel fit_cascade(const CascadeConfig& config, const DataView& train,
                         const DataView& validation, Task task,
                         std::size_t n_classes, std::uint64_t seed,
                         unsigned jobs) {
  config.validate();
  if (train.size() == 0 || validation.size() == 0)
    throw DataError("cascade needs non-empty train and validation sets");
  if (train.n_features != validation.n_features)
    throw DataError("train and validation schemas differ");

  CascadeModel model;
  model.task_ = task;
  model.n_classes_ = n_classes;
  model.raw_dim_ = train.n_features;
  model.config_ = config;
  const std::size_t width = model.forest_width();
  const std::size_t n_forests = config.forests.size();

  std::vector<double> train_input(train.features.begin(), train.features.end());
  std::vector<double> val_input(validation.features.begin(),
                                validation.features.end());
  std::size_t input_width = train.n_features;
  double best = 0.0;
  std::size_t stale = 0;

  for (std::size_t t = 0; t < config.max_layers; ++t) {
    const DataView view{train_input, train.targets, input_width};
    std::vector<Forest> forests;
    forests.reserve(n_forests);
    for (std::size_t j = 0; j < n_forests; ++j)
      forests.push_back(fit_forest(config.forests[j], view, task, n_classes,
                                   Rng(seed, t * n_forests + j), jobs));

    const double score =
        score_layer(forests, validation, val_input, input_width, task, width);
    model.scores_.push_back(score);
    if (t == 0 || score > best) {
      best = score;
      model.best_layer_ = t + 1;
      stale = 0;
    } else {
      ++stale;
    }

    const bool last = t + 1 == config.max_layers || stale >= config.stop_patience;
    if (!last) {
      std::vector<double> next_train = layer_features(
          forests, train, train_input, input_width, config.pass_raw, width);
      std::vector<double> next_val = layer_features(
          forests, validation, val_input, input_width, config.pass_raw, width);
      train_input = std::move(next_train);
      val_input = std::move(next_val);
      input_width = (config.pass_raw ? train.n_features : 0) + n_forests * width;
    }
    model.layers_.push_back(std::move(forests));
    if (last) break;
  }
  return model;
}

ForestSpec flattened_spec(const CascadeConfig& config) {
  config.validate();
  const auto it = std::find_if(config.forests.begin(), config.forests.end(),
                               [](const ForestSpec& f) {
                                 return f.kind == ForestKind::breiman;
                               });
  ForestSpec spec = it != config.forests.end() ? *it : config.forests.front();
  if (spec.kind != ForestKind::breiman) {
    spec.kind = ForestKind::breiman;
    spec.bootstrap = true;
    spec.mtry = 0;
  }
  std::size_t per_layer = 0;
  for (const auto& f : config.forests) per_layer += f.n_trees;
  spec.n_trees = per_layer * config.max_layers;
  return spec;
}

Forest flatten_as_rf(const CascadeConfig& config, const DataView& data,
                     Task task, std::size_t n_classes, std::uint64_t seed,
                     unsigned jobs) {
  return fit_forest(flattened_spec(config), data, task, n_classes, seed, jobs);
}

}  // namespace treenet
