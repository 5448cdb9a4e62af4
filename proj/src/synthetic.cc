// Copyright 2026 The Privkit Authors. All rights reserved.
// Use of this source code is governed by an Apache-style license that can be
// found in the LICENSE file.

#include "privkit/synthetic.h"

#include <cmath>
#include <stdexcept>

namespace privkit {

namespace {

void RequireRng(const RngStream* rng) {
  if (rng == nullptr) throw std::invalid_argument("rng stream is required");
}

std::vector<double> NormalizedWeights(std::vector<long double> weights) {
  long double sum = 0.0L;
  for (long double w : weights) sum += w;
  std::vector<double> probs(weights.size());
  for (std::size_t i = 0; i < weights.size(); ++i) {
    probs[i] = static_cast<double>(weights[i] / sum);
  }
  return probs;
}

}  // namespace

std::vector<std::string> IndexedLabels(const std::string& prefix, int count) {
  if (count < 1) throw std::invalid_argument("label count must be positive");
  std::vector<std::string> labels;
  labels.reserve(count);
  for (int i = 0; i < count; ++i) {
    labels.push_back(prefix + std::to_string(i));
  }
  return labels;
}

FiniteDistribution RandomDistribution(const std::vector<std::string>& outcomes,
                                      RngStream* rng) {
  RequireRng(rng);
  std::vector<long double> weights(outcomes.size());
  for (auto& w : weights) {
    w = -std::log(static_cast<long double>(rng->NextUniform()));
  }
  return FiniteDistribution(outcomes, NormalizedWeights(std::move(weights)));
}

DiscreteChannel RandomChannel(int alphabet_size, int n, int output_size,
                              RngStream* rng, std::size_t cap) {
  RequireRng(rng);
  const std::vector<std::string> inputs = IndexedLabels("x", alphabet_size);
  const std::vector<std::string> outputs = IndexedLabels("y", output_size);
  const std::size_t rows_needed =
      CheckedEnumerationSize(alphabet_size, n, cap, "random channel");
  std::vector<std::vector<double>> rows;
  rows.reserve(rows_needed);
  for (std::size_t i = 0; i < rows_needed; ++i) {
    rows.push_back(RandomDistribution(outputs, rng).probs());
  }
  return DiscreteChannel(inputs, n, outputs, std::move(rows), cap);
}

DiscreteChannel MixWithUniform(const DiscreteChannel& channel, double weight) {
  if (std::isnan(weight) || weight < 0.0 || weight > 1.0) {
    throw std::invalid_argument("mixture weight must be in [0, 1]");
  }
  const double uniform = 1.0 / static_cast<double>(channel.output_size());
  std::vector<std::vector<double>> rows;
  rows.reserve(channel.dataset_count());
  for (std::size_t d = 0; d < channel.dataset_count(); ++d) {
    std::vector<double> row = channel.row(d);
    for (double& q : row) {
      q = (1.0 - weight) * q + weight * uniform;
    }
    rows.push_back(std::move(row));
  }
  return DiscreteChannel(channel.input_alphabet(), channel.n(),
                         channel.output_set(), std::move(rows),
                         channel.dataset_count());
}

DiscreteChannel RandomBoundedRatioChannel(int alphabet_size, int n,
                                          int output_size, double c,
                                          RngStream* rng, std::size_t cap) {
  RequireRng(rng);
  if (std::isnan(c) || c < 0.0) {
    throw std::invalid_argument("ratio bound c must be >= 0");
  }
  const std::vector<std::string> inputs = IndexedLabels("x", alphabet_size);
  const std::vector<std::string> outputs = IndexedLabels("y", output_size);
  const std::size_t rows_needed =
      CheckedEnumerationSize(alphabet_size, n, cap, "bounded-ratio channel");

  std::vector<long double> base(output_size);
  for (auto& w : base) {
    w = -std::log(static_cast<long double>(rng->NextUniform()));
  }

  std::vector<std::vector<double>> rows;
  rows.reserve(rows_needed);
  const long double quarter = static_cast<long double>(c) / 4.0L;
  for (std::size_t i = 0; i < rows_needed; ++i) {
    std::vector<long double> weights(output_size);
    for (int t = 0; t < output_size; ++t) {
      const long double sign = rng->NextUniform() < 0.5 ? -1.0L : 1.0L;
      weights[t] = base[t] * std::exp(sign * quarter);
    }
    rows.push_back(NormalizedWeights(std::move(weights)));
  }
  return DiscreteChannel(inputs, n, outputs, std::move(rows), cap);
}

}  // namespace privkit
