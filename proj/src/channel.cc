// Copyright 2026 The Privkit Authors. All rights reserved.
// Use of this source code is governed by an Apache-style license that can be
// found in the LICENSE file.

#include "privkit/channel.h"

#include <cmath>
#include <stdexcept>
#include <unordered_set>
#include <utility>

namespace privkit {
namespace {

void ValidateLabels(const std::vector<std::string>& labels,
                    const std::string& what) {
  if (labels.empty()) {
    throw std::invalid_argument(what + " must be non-empty");
  }
  std::unordered_set<std::string> seen;
  for (const std::string& label : labels) {
    if (label.empty()) {
      throw std::invalid_argument(what + " labels must be non-empty strings");
    }
    if (label.find(',') != std::string::npos) {
      throw std::invalid_argument(what + " labels must not contain ','");
    }
    if (!seen.insert(label).second) {
      throw std::invalid_argument("duplicate label in " + what + ": " + label);
    }
  }
}

void ValidateRow(const std::vector<double>& row, std::size_t output_size,
                 const std::string& key) {
  if (row.size() != output_size) {
    throw std::invalid_argument("row '" + key + "' has wrong width");
  }
  long double sum = 0.0L;
  for (double p : row) {
    if (!(p >= 0.0)) {
      throw std::invalid_argument("row '" + key +
                                  "' has a negative probability");
    }
    sum += p;
  }
  if (std::fabs(static_cast<double>(sum) - 1.0) > kProbabilitySumTolerance) {
    throw std::invalid_argument("row '" + key + "' sums to " +
                                std::to_string(static_cast<double>(sum)) +
                                ", not 1");
  }
}

}  // namespace

DiscreteChannel::DiscreteChannel(std::vector<std::string> input_alphabet,
                                 int n, std::vector<std::string> output_set,
                                 std::vector<std::vector<double>> rows,
                                 std::size_t cap)
    : input_alphabet_(std::move(input_alphabet)),
      n_(n),
      output_set_(std::move(output_set)),
      rows_(std::move(rows)) {
  ValidateLabels(input_alphabet_, "input alphabet");
  ValidateLabels(output_set_, "output set");
  if (n_ < 1) throw std::invalid_argument("channel needs n >= 1");
  std::size_t expected = CheckedEnumerationSize(input_alphabet_.size(), n_,
                                                cap, "channel dataset space");
  if (rows_.size() != expected) {
    throw std::invalid_argument("channel needs " + std::to_string(expected) +
                                " rows, got " + std::to_string(rows_.size()));
  }
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    ValidateRow(rows_[i], output_set_.size(), DatasetKey(i));
  }
}

FiniteDistribution DiscreteChannel::RowDistribution(
    std::size_t dataset_index) const {
  return FiniteDistribution(output_set_, rows_.at(dataset_index));
}

std::vector<std::size_t> DiscreteChannel::DatasetDigits(
    std::size_t dataset_index) const {
  std::vector<std::size_t> digits(static_cast<std::size_t>(n_));
  std::size_t rest = dataset_index;
  for (std::size_t i = digits.size(); i-- > 0;) {
    digits[i] = rest % input_alphabet_.size();
    rest /= input_alphabet_.size();
  }
  if (rest != 0) throw std::invalid_argument("dataset index out of range");
  return digits;
}

std::size_t DiscreteChannel::DatasetIndex(
    const std::vector<std::size_t>& digits) const {
  if (digits.size() != static_cast<std::size_t>(n_)) {
    throw std::invalid_argument("dataset digit count differs from n");
  }
  std::size_t index = 0;
  for (std::size_t digit : digits) {
    if (digit >= input_alphabet_.size()) {
      throw std::invalid_argument("dataset digit out of range");
    }
    index = index * input_alphabet_.size() + digit;
  }
  return index;
}

std::string DiscreteChannel::DatasetKey(std::size_t dataset_index) const {
  std::vector<std::size_t> digits = DatasetDigits(dataset_index);
  std::string key;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (i > 0) key += ',';
    key += input_alphabet_[digits[i]];
  }
  return key;
}

std::vector<std::pair<std::size_t, std::size_t>>
DiscreteChannel::NeighborPairs() const {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  const std::size_t alphabet = input_alphabet_.size();
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    std::vector<std::size_t> digits = DatasetDigits(i);
    for (std::size_t pos = 0; pos < digits.size(); ++pos) {
      std::size_t original = digits[pos];
      for (std::size_t value = original + 1; value < alphabet; ++value) {
        digits[pos] = value;
        pairs.emplace_back(i, DatasetIndex(digits));
      }
      digits[pos] = original;
    }
  }
  return pairs;
}

nlohmann::json DiscreteChannel::ToJson() const {
  nlohmann::json rows = nlohmann::json::object();
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    rows[DatasetKey(i)] = rows_[i];
  }
  return nlohmann::json{{"input_alphabet", input_alphabet_},
                        {"n", n_},
                        {"output_set", output_set_},
                        {"rows", std::move(rows)}};
}

DiscreteChannel DiscreteChannel::FromJson(const nlohmann::json& j,
                                          std::size_t cap) {
  if (!j.is_object()) {
    throw std::invalid_argument("channel JSON must be an object");
  }
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (key != "input_alphabet" && key != "n" && key != "output_set" &&
        key != "rows") {
      throw std::invalid_argument("unknown channel field: " + key);
    }
  }
  for (const char* field : {"input_alphabet", "n", "output_set", "rows"}) {
    if (!j.contains(field)) {
      throw std::invalid_argument(std::string("channel JSON needs '") + field +
                                  "'");
    }
  }
  auto input_alphabet = j.at("input_alphabet").get<std::vector<std::string>>();
  int n = j.at("n").get<int>();
  auto output_set = j.at("output_set").get<std::vector<std::string>>();
  const nlohmann::json& rows_json = j.at("rows");
  if (!rows_json.is_object()) {
    throw std::invalid_argument("channel 'rows' must be an object");
  }
  if (input_alphabet.empty() || n < 1) {
    throw std::invalid_argument("channel needs a non-empty alphabet, n >= 1");
  }
  std::size_t expected = CheckedEnumerationSize(input_alphabet.size(), n, cap,
                                                "channel dataset space");

  // Build a probe channel solely to reuse canonical key construction, then
  // pull each row by key so JSON key order never matters.
  std::vector<std::vector<double>> rows(expected);
  DiscreteChannel probe(input_alphabet, n, {"_"},
                        std::vector<std::vector<double>>(expected, {1.0}),
                        cap);
  std::unordered_set<std::string> expected_keys;
  for (std::size_t i = 0; i < expected; ++i) {
    std::string key = probe.DatasetKey(i);
    expected_keys.insert(key);
    if (!rows_json.contains(key)) {
      throw std::invalid_argument("channel rows missing dataset '" + key +
                                  "'");
    }
    rows[i] = rows_json.at(key).get<std::vector<double>>();
  }
  for (const auto& [key, value] : rows_json.items()) {
    (void)value;
    if (expected_keys.find(key) == expected_keys.end()) {
      throw std::invalid_argument("channel rows contain unknown dataset '" +
                                  key + "'");
    }
  }
  return DiscreteChannel(std::move(input_alphabet), n, std::move(output_set),
                         std::move(rows), cap);
}

FiniteDistribution ChannelMarginal(const DiscreteChannel& channel,
                                   const FiniteDistribution& dataset_dist) {
  if (dataset_dist.size() != channel.dataset_count()) {
    throw std::invalid_argument(
        "dataset distribution size differs from channel dataset space");
  }
  for (std::size_t i = 0; i < dataset_dist.size(); ++i) {
    if (dataset_dist.outcome(i) != channel.DatasetKey(i)) {
      throw std::invalid_argument(
          "dataset distribution outcomes must be the channel's dataset keys "
          "in canonical order");
    }
  }
  std::vector<long double> acc(channel.output_size(), 0.0L);
  for (std::size_t ds = 0; ds < channel.dataset_count(); ++ds) {
    double w = dataset_dist.prob(ds);
    if (w == 0.0) continue;
    const std::vector<double>& row = channel.row(ds);
    for (std::size_t k = 0; k < row.size(); ++k) acc[k] += w * row[k];
  }
  std::vector<double> probs(acc.begin(), acc.end());
  return FiniteDistribution(channel.output_set(), std::move(probs));
}

DiscreteChannel ComposeChannels(const DiscreteChannel& outer,
                                const DiscreteChannel& inner) {
  if (outer.n() != 1) {
    throw std::invalid_argument("outer channel must act on single values");
  }
  if (outer.input_alphabet() != inner.output_set()) {
    throw std::invalid_argument(
        "outer input alphabet must equal inner output set");
  }
  std::vector<std::vector<double>> rows(inner.dataset_count());
  for (std::size_t ds = 0; ds < inner.dataset_count(); ++ds) {
    std::vector<long double> acc(outer.output_size(), 0.0L);
    const std::vector<double>& inner_row = inner.row(ds);
    for (std::size_t mid = 0; mid < inner_row.size(); ++mid) {
      double w = inner_row[mid];
      if (w == 0.0) continue;
      const std::vector<double>& outer_row = outer.row(mid);
      for (std::size_t k = 0; k < outer_row.size(); ++k) {
        acc[k] += w * outer_row[k];
      }
    }
    rows[ds].assign(acc.begin(), acc.end());
  }
  return DiscreteChannel(inner.input_alphabet(), inner.n(), outer.output_set(),
                         std::move(rows));
}

}  // namespace privkit
