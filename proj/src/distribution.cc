// Copyright 2026 The Privkit Authors. All rights reserved.
// Use of this source code is governed by an Apache-style license that can be
// found in the LICENSE file.

#include "privkit/distribution.h"

#include <cmath>
#include <stdexcept>
#include <unordered_set>
#include <utility>

namespace privkit {
namespace {

void ValidateOutcomeLabels(const std::vector<std::string>& outcomes) {
  if (outcomes.empty()) {
    throw std::invalid_argument("distribution needs at least one outcome");
  }
  std::unordered_set<std::string> seen;
  for (const std::string& label : outcomes) {
    if (label.empty()) {
      throw std::invalid_argument("outcome labels must be non-empty");
    }
    if (!seen.insert(label).second) {
      throw std::invalid_argument("duplicate outcome label: " + label);
    }
  }
}

}  // namespace

FiniteDistribution::FiniteDistribution(std::vector<std::string> outcomes,
                                       std::vector<double> probs)
    : outcomes_(std::move(outcomes)), probs_(std::move(probs)) {
  ValidateOutcomeLabels(outcomes_);
  if (outcomes_.size() != probs_.size()) {
    throw std::invalid_argument("outcome and probability counts differ");
  }
  long double sum = 0.0L;
  for (double p : probs_) {
    if (!(p >= 0.0)) {
      throw std::invalid_argument("probabilities must be non-negative");
    }
    sum += p;
  }
  if (std::fabs(static_cast<double>(sum) - 1.0) > kProbabilitySumTolerance) {
    throw std::invalid_argument("probabilities sum to " +
                                std::to_string(static_cast<double>(sum)) +
                                ", not 1");
  }
}

FiniteDistribution FiniteDistribution::PointMass(
    std::vector<std::string> outcomes, std::size_t index) {
  if (index >= outcomes.size()) {
    throw std::invalid_argument("point mass index out of range");
  }
  std::vector<double> probs(outcomes.size(), 0.0);
  probs[index] = 1.0;
  return FiniteDistribution(std::move(outcomes), std::move(probs));
}

FiniteDistribution FiniteDistribution::Uniform(
    std::vector<std::string> outcomes) {
  if (outcomes.empty()) {
    throw std::invalid_argument("distribution needs at least one outcome");
  }
  std::vector<double> probs(outcomes.size(), 1.0 / outcomes.size());
  return FiniteDistribution(std::move(outcomes), std::move(probs));
}

bool FiniteDistribution::SameOutcomes(const FiniteDistribution& other) const {
  return outcomes_ == other.outcomes_;
}

nlohmann::json FiniteDistribution::ToJson() const {
  return nlohmann::json{{"outcomes", outcomes_}, {"probs", probs_}};
}

FiniteDistribution FiniteDistribution::FromJson(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("outcomes") || !j.contains("probs")) {
    throw std::invalid_argument(
        "distribution JSON needs 'outcomes' and 'probs'");
  }
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (key != "outcomes" && key != "probs") {
      throw std::invalid_argument("unknown distribution field: " + key);
    }
  }
  return FiniteDistribution(j.at("outcomes").get<std::vector<std::string>>(),
                            j.at("probs").get<std::vector<double>>());
}

FiniteDistribution ProductDistribution(
    const std::vector<FiniteDistribution>& components, std::size_t cap) {
  if (components.empty()) {
    throw std::invalid_argument("product of zero components");
  }
  std::size_t total = 1;
  for (const FiniteDistribution& c : components) {
    if (c.size() > cap || total > cap / c.size()) {
      throw ResourceCapError("product distribution would enumerate more than " +
                             std::to_string(cap) + " outcomes");
    }
    total *= c.size();
  }

  // Component masses are each 1 within tolerance, but their product can drift
  // past it for long products; dividing by the exact product of masses keeps
  // the result valid without changing exact inputs.
  long double mass = 1.0L;
  for (const FiniteDistribution& c : components) {
    long double s = 0.0L;
    for (double p : c.probs()) s += p;
    mass *= s;
  }

  std::vector<std::string> labels(total);
  std::vector<double> probs(total);
  std::vector<std::size_t> digits(components.size(), 0);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::string label;
    long double p = 1.0L;
    for (std::size_t i = 0; i < components.size(); ++i) {
      if (i > 0) label += ',';
      label += components[i].outcome(digits[i]);
      p *= components[i].prob(digits[i]);
    }
    labels[idx] = std::move(label);
    probs[idx] = static_cast<double>(p / mass);
    for (std::size_t i = components.size(); i-- > 0;) {
      if (++digits[i] < components[i].size()) break;
      digits[i] = 0;
    }
  }
  return FiniteDistribution(std::move(labels), std::move(probs));
}

FiniteDistribution IidProductDistribution(const FiniteDistribution& component,
                                          int n, std::size_t cap) {
  if (n < 1) throw std::invalid_argument("product needs n >= 1");
  return ProductDistribution(
      std::vector<FiniteDistribution>(static_cast<std::size_t>(n), component),
      cap);
}

}  // namespace privkit
