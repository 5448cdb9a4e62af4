// Copyright 2026 The Privkit Authors. All rights reserved.
// Use of this source code is governed by an Apache-style license that can be
// found in the LICENSE file.

#include "privkit/histogram.h"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace privkit {

void HistogramSpec::Validate() const {
  if (d != 1 && d != 2) {
    throw std::invalid_argument("histogram: d must be 1 or 2");
  }
  if (k_bins < 1) {
    throw std::invalid_argument("histogram: k_bins must be positive");
  }
  if (std::isnan(eps) || eps <= 0.0) {
    throw std::invalid_argument("histogram: eps must be positive (or +inf)");
  }
}

nlohmann::json HistogramSpec::ToJson() const {
  nlohmann::json j;
  j["d"] = d;
  j["k_bins"] = k_bins;
  if (std::isinf(eps)) {
    j["eps"] = "inf";
  } else {
    j["eps"] = eps;
  }
  return j;
}

HistogramSpec HistogramSpec::FromJson(const nlohmann::json& j) {
  for (const auto& item : j.items()) {
    const std::string& key = item.key();
    if (key != "d" && key != "k_bins" && key != "eps") {
      throw std::invalid_argument("histogram: unknown field '" + key + "'");
    }
  }
  HistogramSpec spec;
  spec.d = j.at("d").get<int>();
  spec.k_bins = j.at("k_bins").get<int>();
  const auto& eps = j.at("eps");
  if (eps.is_string()) {
    if (eps.get<std::string>() != "inf") {
      throw std::invalid_argument("histogram: eps must be a number or \"inf\"");
    }
    spec.eps = std::numeric_limits<double>::infinity();
  } else {
    spec.eps = eps.get<double>();
  }
  spec.Validate();
  return spec;
}

namespace {

// Axis bin of a coordinate in [0, 1]; the right edge x = 1 folds into the
// last bin so the partition covers the closed cube.
int AxisBin(double x, int k_bins) {
  if (std::isnan(x) || x < 0.0 || x > 1.0) {
    throw std::invalid_argument("histogram: point outside [0, 1]");
  }
  int b = static_cast<int>(x * k_bins);
  if (b >= k_bins) b = k_bins - 1;
  return b;
}

}  // namespace

std::size_t HistogramEstimate::BinIndex(const std::vector<double>& point) const {
  if (static_cast<int>(point.size()) != d) {
    throw std::invalid_argument("histogram: point dimension mismatch");
  }
  std::size_t index = 0;
  for (int a = 0; a < d; ++a) {
    index = index * static_cast<std::size_t>(k_bins) +
            static_cast<std::size_t>(AxisBin(point[a], k_bins));
  }
  return index;
}

double HistogramEstimate::ValueAt(const std::vector<double>& point) const {
  return heights[BinIndex(point)];
}

HistogramEstimate PrivateHistogram(const std::vector<std::vector<double>>& points,
                                   const HistogramSpec& spec, RngStream* rng) {
  spec.Validate();
  if (points.empty()) {
    throw std::invalid_argument("histogram: need at least one point");
  }
  const double noise_scale =
      std::isinf(spec.eps)
          ? 0.0
          : 2.0 / (static_cast<double>(points.size()) * spec.eps);
  if (noise_scale > 0.0 && rng == nullptr) {
    throw std::invalid_argument("histogram: private mode needs an rng stream");
  }

  std::size_t total_bins = 1;
  for (int a = 0; a < spec.d; ++a) {
    total_bins *= static_cast<std::size_t>(spec.k_bins);
  }

  HistogramEstimate est;
  est.d = spec.d;
  est.k_bins = spec.k_bins;
  est.heights.assign(total_bins, 0.0);

  const double n = static_cast<double>(points.size());
  for (const auto& p : points) {
    est.heights[est.BinIndex(p)] += 1.0;
  }

  // Height of a bin is k_bins^d * (count/n + Laplace(2/(n*eps))), the
  // density-normalized noisy frequency.
  double cell_inverse_volume = 1.0;
  for (int a = 0; a < spec.d; ++a) {
    cell_inverse_volume *= static_cast<double>(spec.k_bins);
  }
  for (auto& h : est.heights) {
    double noisy = h / n;
    if (noise_scale > 0.0) {
      noisy += rng->NextLaplace(noise_scale);
    }
    h = cell_inverse_volume * noisy;
  }
  return est;
}

}  // namespace privkit
