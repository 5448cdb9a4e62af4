// Copyright 2026 The Privkit Authors. All rights reserved.
// Use of this source code is governed by an Apache-style license that can be
// found in the LICENSE file.

#ifndef PRIVKIT_HISTOGRAM_H_
#define PRIVKIT_HISTOGRAM_H_

#include <cstdint>
#include <vector>

#include "json.hpp"
#include "privkit/rng.h"

namespace privkit {

// Private histogram density estimator on [0, 1]^d with k_bins equal bins per
// axis. Changing one sample point moves at most two counts by one, so the
// count vector has L1 sensitivity 2/n and per-bin Laplace noise of scale
// 2/(n * eps) gives eps-differential privacy. eps = +infinity is accepted and
// yields the noiseless histogram.
struct HistogramSpec {
  int d = 1;  // 1 or 2
  int k_bins = 1;
  double eps = 1.0;

  void Validate() const;
  nlohmann::json ToJson() const;
  static HistogramSpec FromJson(const nlohmann::json& j);
};

struct HistogramEstimate {
  int d = 1;
  int k_bins = 1;
  // Bin heights of the estimated density, k_bins^d entries, first axis most
  // significant. Heights can be negative; the estimator is not clamped.
  std::vector<double> heights;

  std::size_t BinIndex(const std::vector<double>& point) const;
  // Estimated density at `point`; the point must lie in [0, 1]^d.
  double ValueAt(const std::vector<double>& point) const;
};

// Builds the private histogram for `points` (each in [0, 1]^d). Noise draws
// come from `rng`, one per bin in bin order; `rng` may be null only when
// spec.eps is +infinity.
HistogramEstimate PrivateHistogram(const std::vector<std::vector<double>>& points,
                                   const HistogramSpec& spec, RngStream* rng);

}  // namespace privkit

#endif  // PRIVKIT_HISTOGRAM_H_
