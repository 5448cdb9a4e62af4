// Copyright 2026 The Privkit Authors. All rights reserved.
// Use of this source code is governed by an Apache-style license that can be
// found in the LICENSE file.

#ifndef PRIVKIT_DISTRIBUTION_H_
#define PRIVKIT_DISTRIBUTION_H_

#include <cstddef>
#include <string>
#include <vector>

#include "json.hpp"
#include "privkit/errors.h"

namespace privkit {

// Every probability vector accepted or produced by this library must sum to 1
// within this tolerance.
inline constexpr double kProbabilitySumTolerance = 1e-12;

// A probability distribution on a finite set of labeled outcomes. Outcome
// labels are unique, non-empty strings; probabilities are non-negative and sum
// to 1 within kProbabilitySumTolerance. Instances are immutable.
class FiniteDistribution {
 public:
  FiniteDistribution(std::vector<std::string> outcomes,
                     std::vector<double> probs);

  static FiniteDistribution PointMass(std::vector<std::string> outcomes,
                                      std::size_t index);
  static FiniteDistribution Uniform(std::vector<std::string> outcomes);

  std::size_t size() const { return probs_.size(); }
  const std::vector<std::string>& outcomes() const { return outcomes_; }
  const std::vector<double>& probs() const { return probs_; }
  double prob(std::size_t i) const { return probs_.at(i); }
  const std::string& outcome(std::size_t i) const { return outcomes_.at(i); }

  // True iff both distributions share the same outcome labels in the same
  // order. All binary operations in this library require this.
  bool SameOutcomes(const FiniteDistribution& other) const;

  nlohmann::json ToJson() const;
  static FiniteDistribution FromJson(const nlohmann::json& j);

 private:
  std::vector<std::string> outcomes_;
  std::vector<double> probs_;
};

// Product of independent components. Outcome labels are the component labels
// joined with ',' in odometer order: the first component is most significant,
// the last cycles fastest. Throws ResourceCapError if the product space
// exceeds `cap` outcomes.
FiniteDistribution ProductDistribution(
    const std::vector<FiniteDistribution>& components,
    std::size_t cap = kDefaultEnumerationCap);

// n-fold product of a single component.
FiniteDistribution IidProductDistribution(
    const FiniteDistribution& component, int n,
    std::size_t cap = kDefaultEnumerationCap);

}  // namespace privkit

#endif  // PRIVKIT_DISTRIBUTION_H_
