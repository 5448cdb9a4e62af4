// Copyright 2026 The Privkit Authors. All rights reserved.
// Use of this source code is governed by an Apache-style license that can be
// found in the LICENSE file.

#ifndef PRIVKIT_CHANNEL_H_
#define PRIVKIT_CHANNEL_H_

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "privkit/distribution.h"

namespace privkit {

// A randomized map from datasets in X^n to a finite output set: one
// probability row per dataset. Datasets are indexed in odometer order (first
// coordinate most significant) and keyed by their coordinate labels joined
// with ','. Rows are validated like distributions. Immutable.
class DiscreteChannel {
 public:
  // `rows` is indexed by dataset index; rows.size() must equal |X|^n, which
  // must stay within `cap` (ResourceCapError otherwise).
  DiscreteChannel(std::vector<std::string> input_alphabet, int n,
                  std::vector<std::string> output_set,
                  std::vector<std::vector<double>> rows,
                  std::size_t cap = kDefaultEnumerationCap);

  const std::vector<std::string>& input_alphabet() const {
    return input_alphabet_;
  }
  int n() const { return n_; }
  const std::vector<std::string>& output_set() const { return output_set_; }
  std::size_t dataset_count() const { return rows_.size(); }
  std::size_t output_size() const { return output_set_.size(); }

  const std::vector<double>& row(std::size_t dataset_index) const {
    return rows_.at(dataset_index);
  }
  FiniteDistribution RowDistribution(std::size_t dataset_index) const;

  // Dataset indexing helpers. Digits are positions into the input alphabet.
  std::vector<std::size_t> DatasetDigits(std::size_t dataset_index) const;
  std::size_t DatasetIndex(const std::vector<std::size_t>& digits) const;
  std::string DatasetKey(std::size_t dataset_index) const;

  // All unordered dataset pairs at Hamming distance exactly 1, as (i, j) with
  // i < j.
  std::vector<std::pair<std::size_t, std::size_t>> NeighborPairs() const;

  nlohmann::json ToJson() const;
  static DiscreteChannel FromJson(const nlohmann::json& j,
                                  std::size_t cap = kDefaultEnumerationCap);

 private:
  std::vector<std::string> input_alphabet_;
  int n_;
  std::vector<std::string> output_set_;
  std::vector<std::vector<double>> rows_;
};

// Output distribution when the dataset is drawn from `dataset_dist`, whose
// outcome labels must be exactly the channel's dataset keys in canonical
// order. This is the mixture sum_ds P(ds) * row(ds).
FiniteDistribution ChannelMarginal(const DiscreteChannel& channel,
                                   const FiniteDistribution& dataset_dist);

// Feeds every output of `inner` through `outer` (a channel on single values,
// n = 1, whose input alphabet equals inner's output set). The result maps
// inner's datasets to outer's outputs.
DiscreteChannel ComposeChannels(const DiscreteChannel& outer,
                                const DiscreteChannel& inner);

}  // namespace privkit

#endif  // PRIVKIT_CHANNEL_H_
