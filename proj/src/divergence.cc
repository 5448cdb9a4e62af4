// Copyright 2026 The Privkit Authors. All rights reserved.
// Use of this source code is governed by an Apache-style license that can be
// found in the LICENSE file.

#include "privkit/divergence.h"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

namespace privkit {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void RequireSameOutcomes(const FiniteDistribution& p,
                         const FiniteDistribution& q) {
  if (!p.SameOutcomes(q)) {
    throw std::invalid_argument("distributions live on different outcome sets");
  }
}

// Fixed check grid spanning both sides of t = 1.
const std::vector<double>& GeneratorCheckGrid() {
  static const std::vector<double> grid = {0.0,  1.0 / 64, 1.0 / 16, 0.25,
                                           0.5,  0.75,     1.0,      1.5,
                                           2.0,  4.0,      16.0,     64.0};
  return grid;
}

void ValidateGenerator(const std::function<double(double)>& f,
                       const std::string& name) {
  if (std::fabs(f(1.0)) > 1e-12) {
    throw std::invalid_argument("f-divergence generator '" + name +
                                "' has f(1) != 0");
  }
  const std::vector<double>& grid = GeneratorCheckGrid();
  for (double t : grid) {
    if (!std::isfinite(f(t))) {
      throw std::invalid_argument("f-divergence generator '" + name +
                                  "' is not finite on [0, inf)");
    }
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (std::size_t j = i + 1; j < grid.size(); ++j) {
      double mid = 0.5 * (grid[i] + grid[j]);
      if (f(mid) > 0.5 * (f(grid[i]) + f(grid[j])) + 1e-9) {
        throw std::invalid_argument("f-divergence generator '" + name +
                                    "' fails midpoint convexity");
      }
    }
  }
}

}  // namespace

double TvDistance(const FiniteDistribution& p, const FiniteDistribution& q) {
  RequireSameOutcomes(p, q);
  long double sum = 0.0L;
  for (std::size_t i = 0; i < p.size(); ++i) {
    sum += std::fabs(p.probs()[i] - q.probs()[i]);
  }
  return static_cast<double>(0.5L * sum);
}

double KlDivergence(const FiniteDistribution& p, const FiniteDistribution& q) {
  RequireSameOutcomes(p, q);
  long double sum = 0.0L;
  for (std::size_t i = 0; i < p.size(); ++i) {
    double pi = p.probs()[i];
    if (pi == 0.0) continue;
    double qi = q.probs()[i];
    if (qi == 0.0) return kInf;
    sum += pi * std::log(pi / qi);
  }
  // Rounding can leave a tiny negative residue for near-identical inputs; the
  // divergence itself is non-negative.
  double result = static_cast<double>(sum);
  return result < 0.0 && result > -1e-12 ? 0.0 : result;
}

double LeCamError(const FiniteDistribution& m0, const FiniteDistribution& m1) {
  double err = 1.0 - TvDistance(m0, m1);
  return err < 0.0 ? 0.0 : err;
}

FDivergenceSpec::FDivergenceSpec(Tag tag, std::string name,
                                 std::function<double(double)> generator,
                                 double slope_at_infinity)
    : tag_(tag),
      name_(std::move(name)),
      generator_(std::move(generator)),
      slope_at_infinity_(slope_at_infinity) {}

FDivergenceSpec FDivergenceSpec::TotalVariation() {
  return FDivergenceSpec(
      Tag::kTotalVariation, "total-variation",
      [](double t) { return 0.5 * std::fabs(t - 1.0); }, 0.5);
}

FDivergenceSpec FDivergenceSpec::KullbackLeibler() {
  return FDivergenceSpec(
      Tag::kKullbackLeibler, "kullback-leibler",
      [](double t) { return t == 0.0 ? 0.0 : t * std::log(t); }, kInf);
}

FDivergenceSpec FDivergenceSpec::Custom(
    std::string name, std::function<double(double)> generator,
    double slope_at_infinity) {
  ValidateGenerator(generator, name);
  if (std::isnan(slope_at_infinity)) {
    throw std::invalid_argument("slope at infinity must not be NaN");
  }
  return FDivergenceSpec(Tag::kCustom, std::move(name), std::move(generator),
                         slope_at_infinity);
}

double FDivergence(const FDivergenceSpec& spec, const FiniteDistribution& p,
                   const FiniteDistribution& q) {
  switch (spec.tag()) {
    case FDivergenceSpec::Tag::kTotalVariation:
      return TvDistance(p, q);
    case FDivergenceSpec::Tag::kKullbackLeibler:
      return KlDivergence(p, q);
    case FDivergenceSpec::Tag::kCustom:
      break;
  }
  RequireSameOutcomes(p, q);
  long double sum = 0.0L;
  long double unmatched = 0.0L;  // p-mass where q vanishes
  for (std::size_t i = 0; i < p.size(); ++i) {
    double pi = p.probs()[i];
    double qi = q.probs()[i];
    if (qi == 0.0) {
      unmatched += pi;
    } else {
      sum += qi * spec.Generator(pi / qi);
    }
  }
  if (unmatched > 0.0L) {
    if (std::isinf(spec.slope_at_infinity())) return kInf;
    sum += unmatched * spec.slope_at_infinity();
  }
  double result = static_cast<double>(sum);
  return result < 0.0 && result > -1e-12 ? 0.0 : result;
}

}  // namespace privkit
