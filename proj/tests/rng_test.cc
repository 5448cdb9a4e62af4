// Copyright 2026 The Privkit Authors. All rights reserved.
// Use of this source code is governed by an Apache-style license that can be
// found in the LICENSE file.

#include "privkit/rng.h"

#include <cmath>
#include <cstdint>
#include <vector>

#include <gtest/gtest.h>

namespace privkit {
namespace {

TEST(RngStream, SameAddressSameSequence) {
  RngStream a(123456789, 42);
  RngStream b(123456789, 42);
  for (int i = 0; i < 1000; ++i) {
    ASSERT_EQ(a.NextUint64(), b.NextUint64());
  }
}

TEST(RngStream, ConstructionOrderIsIrrelevant) {
  RngStream first(7, 1);
  std::vector<std::uint64_t> reference;
  for (int i = 0; i < 64; ++i) reference.push_back(first.NextUint64());

  // Interleave with unrelated streams before and during the draw.
  RngStream noise_a(7, 2);
  noise_a.NextUint64();
  RngStream replay(7, 1);
  RngStream noise_b(99, 1);
  for (int i = 0; i < 64; ++i) {
    noise_b.NextUint64();
    ASSERT_EQ(replay.NextUint64(), reference[static_cast<std::size_t>(i)]);
  }
}

TEST(RngStream, DistinctAddressesDiffer) {
  RngStream base(2024, 0);
  RngStream other_stream(2024, 1);
  RngStream other_seed(2025, 0);
  int same_stream = 0;
  int same_seed = 0;
  for (int i = 0; i < 64; ++i) {
    std::uint64_t v = base.NextUint64();
    if (v == other_stream.NextUint64()) ++same_stream;
    if (v == other_seed.NextUint64()) ++same_seed;
  }
  EXPECT_EQ(same_stream, 0);
  EXPECT_EQ(same_seed, 0);
}

TEST(RngStream, UniformStaysInsideOpenInterval) {
  RngStream rng(31337, 5);
  double lo = 1.0;
  double hi = 0.0;
  for (int i = 0; i < 200000; ++i) {
    double u = rng.NextUniform();
    ASSERT_GT(u, 0.0);
    ASSERT_LT(u, 1.0);
    lo = std::min(lo, u);
    hi = std::max(hi, u);
  }
  // 2e5 draws should visit both tails.
  EXPECT_LT(lo, 1e-3);
  EXPECT_GT(hi, 1.0 - 1e-3);
}

TEST(RngStream, GaussianMoments) {
  RngStream rng(8675309, 2);
  const int kDraws = 200000;
  double sum = 0.0;
  double sum_sq = 0.0;
  for (int i = 0; i < kDraws; ++i) {
    double g = rng.NextGaussian();
    sum += g;
    sum_sq += g * g;
  }
  double mean = sum / kDraws;
  double var = sum_sq / kDraws - mean * mean;
  // Tolerances are ~8 standard errors at this sample size.
  EXPECT_NEAR(mean, 0.0, 0.02);
  EXPECT_NEAR(var, 1.0, 0.03);
}

TEST(RngStream, LaplaceScaleZeroIsExactlyZero) {
  RngStream rng(11, 0);
  for (int i = 0; i < 100; ++i) {
    EXPECT_EQ(rng.NextLaplace(0.0), 0.0);
  }
}

TEST(RngStream, LaplaceMoments) {
  RngStream rng(55555, 7);
  const double b = 1.5;
  const int kDraws = 200000;
  double abs_sum = 0.0;
  double sq_sum = 0.0;
  int positive = 0;
  for (int i = 0; i < kDraws; ++i) {
    double w = rng.NextLaplace(b);
    abs_sum += std::fabs(w);
    sq_sum += w * w;
    if (w > 0.0) ++positive;
  }
  // E|W| = b, E W^2 = 2 b^2, and the sign is symmetric.
  EXPECT_NEAR(abs_sum / kDraws, b, 0.03);
  EXPECT_NEAR(sq_sum / kDraws, 2.0 * b * b, 0.2);
  EXPECT_NEAR(static_cast<double>(positive) / kDraws, 0.5, 0.01);
}

TEST(RngStream, LaplaceScalesLinearly) {
  RngStream rng_a(404, 9);
  RngStream rng_b(404, 9);
  for (int i = 0; i < 100; ++i) {
    double w1 = rng_a.NextLaplace(1.0);
    double w3 = rng_b.NextLaplace(3.0);
    ASSERT_NEAR(w3, 3.0 * w1, 1e-12 * std::max(1.0, std::fabs(w3)));
  }
}

}  // namespace
}  // namespace privkit
