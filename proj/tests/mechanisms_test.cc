// Copyright 2026 The Privkit Authors. All rights reserved.
// Use of this source code is governed by an Apache-style license that can be
// found in the LICENSE file.

#include "privkit/mechanisms.h"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "privkit/audit.h"
#include "privkit/divergence.h"
#include "privkit/rng.h"

namespace privkit {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

MechanismSpec KlSpec(int d, std::int64_t n, double r, double k, double eps_kl) {
  MechanismSpec spec;
  spec.variant = MechanismVariant::kKlGaussian;
  spec.d = d;
  spec.n = n;
  spec.r = r;
  spec.k_moments = k;
  spec.eps_kl = eps_kl;
  return spec;
}

MechanismSpec SmoothSpec(int d, std::int64_t n, double r, double k,
                         double eps) {
  MechanismSpec spec;
  spec.variant = MechanismVariant::kSmoothDpLaplace;
  spec.d = d;
  spec.n = n;
  spec.r = r;
  spec.k_moments = k;
  spec.eps = eps;
  return spec;
}

TEST(MechanismSpec, ValidateRejectsBadParameters) {
  MechanismSpec good = KlSpec(2, 10, 1.0, 2.0, 0.5);
  EXPECT_NO_THROW(good.Validate());

  MechanismSpec bad = good;
  bad.d = 0;
  EXPECT_THROW(bad.Validate(), std::invalid_argument);
  bad = good;
  bad.n = 0;
  EXPECT_THROW(bad.Validate(), std::invalid_argument);
  bad = good;
  bad.r = 0.0;
  EXPECT_THROW(bad.Validate(), std::invalid_argument);
  bad = good;
  bad.k_moments = 1.0;
  EXPECT_THROW(bad.Validate(), std::invalid_argument);
  bad = good;
  bad.eps_kl = 0.0;
  EXPECT_THROW(bad.Validate(), std::invalid_argument);
  bad = good;
  bad.truncation_override = -1.0;
  EXPECT_THROW(bad.Validate(), std::invalid_argument);

  MechanismSpec approx;
  approx.variant = MechanismVariant::kApproxDpGaussian;
  approx.d = 1;
  approx.n = 10;
  approx.eps = 1.0;
  approx.delta = 0.01;
  EXPECT_NO_THROW(approx.Validate());
  approx.delta = 1.0;
  EXPECT_THROW(approx.Validate(), std::invalid_argument);
  approx.delta = 0.0;
  EXPECT_THROW(approx.Validate(), std::invalid_argument);

  MechanismSpec smooth = SmoothSpec(1, 10, 1.0, 2.0, 0.0);
  EXPECT_THROW(smooth.Validate(), std::invalid_argument);
}

TEST(MechanismSpec, VariantNamesRoundTrip) {
  for (MechanismVariant v :
       {MechanismVariant::kKlGaussian, MechanismVariant::kApproxDpGaussian,
        MechanismVariant::kSmoothDpLaplace}) {
    EXPECT_EQ(MechanismVariantFromName(MechanismVariantName(v)), v);
  }
  EXPECT_THROW(MechanismVariantFromName("gauss"), std::invalid_argument);
}

TEST(MechanismSpec, TruncationRadiusFollowsCalibration) {
  // All moments bounded: the data already live in the radius-r ball.
  MechanismSpec bounded = KlSpec(3, 100, 2.5, kInf, 0.5);
  EXPECT_DOUBLE_EQ(bounded.TruncationRadius(), 2.5);

  // Override wins over the calibrated radius.
  MechanismSpec overridden = KlSpec(3, 100, 2.5, 2.0, 0.5);
  overridden.truncation_override = 0.7;
  EXPECT_DOUBLE_EQ(overridden.TruncationRadius(), 0.7);

  MechanismSpec kl = KlSpec(4, 100, 2.0, 2.0, 0.5);
  EXPECT_NEAR(kl.TruncationRadius(),
              2.0 * std::pow(100.0 * 100.0 * 0.5 / 4.0, 0.25), 1e-12);

  MechanismSpec approx;
  approx.variant = MechanismVariant::kApproxDpGaussian;
  approx.d = 3;
  approx.n = 50;
  approx.r = 1.5;
  approx.k_moments = 3.0;
  approx.eps = 1.0;
  approx.delta = 0.01;
  EXPECT_NEAR(approx.TruncationRadius(),
              1.5 * std::pow(2500.0 / (3.0 * std::log(100.0)), 1.0 / 6.0),
              1e-12);

  MechanismSpec smooth = SmoothSpec(2, 80, 1.0, 2.5, 0.4);
  EXPECT_NEAR(smooth.TruncationRadius(), std::pow(80.0 * 0.4 / 2.0, 0.4),
              1e-12);
}

TEST(MechanismSpec, NoiseAccessorsMatchVariant) {
  MechanismSpec kl = KlSpec(2, 10, 1.0, 2.0, 0.5);
  double t = kl.TruncationRadius();
  EXPECT_NEAR(kl.GaussianVariance(), 2.0 * t * t / (100.0 * 0.5), 1e-12);
  EXPECT_THROW(kl.LaplaceScale(), std::invalid_argument);
  EXPECT_NEAR(kl.NoiseSecondMoment(), 2.0 * kl.GaussianVariance(), 1e-12);

  MechanismSpec smooth = SmoothSpec(3, 20, 1.0, 2.0, 0.5);
  double ts = smooth.TruncationRadius();
  double b = 2.0 * ts * std::sqrt(3.0) / (0.5 * 20.0);
  EXPECT_NEAR(smooth.LaplaceScale(), b, 1e-12);
  EXPECT_THROW(smooth.GaussianVariance(), std::invalid_argument);
  EXPECT_NEAR(smooth.NoiseSecondMoment(), 6.0 * b * b, 1e-12);
}

TEST(MechanismSpec, JsonRoundTripIncludingInfiniteMoments) {
  MechanismSpec spec = KlSpec(2, 50, 1.25, kInf, 0.75);
  spec.truncation_override = 0.9;
  MechanismSpec back = MechanismSpec::FromJson(spec.ToJson());
  EXPECT_EQ(back.variant, spec.variant);
  EXPECT_EQ(back.d, spec.d);
  EXPECT_EQ(back.n, spec.n);
  EXPECT_TRUE(std::isinf(back.k_moments));
  EXPECT_DOUBLE_EQ(back.eps_kl, spec.eps_kl);
  ASSERT_TRUE(back.truncation_override.has_value());
  EXPECT_DOUBLE_EQ(*back.truncation_override, 0.9);

  nlohmann::json j = spec.ToJson();
  j["typo"] = 1;
  EXPECT_THROW(MechanismSpec::FromJson(j), std::invalid_argument);
}

TEST(TruncateProject, ProjectsOntoBall) {
  std::vector<double> inside = {0.3, -0.4};
  EXPECT_EQ(TruncateProject(inside, 1.0), inside);

  std::vector<double> outside = {3.0, 4.0};
  std::vector<double> projected = TruncateProject(outside, 1.0);
  double norm = std::hypot(projected[0], projected[1]);
  EXPECT_NEAR(norm, 1.0, 1e-12);
  // Direction is preserved.
  EXPECT_NEAR(projected[0] * 4.0, projected[1] * 3.0, 1e-12);

  EXPECT_THROW(TruncateProject(inside, 0.0), std::invalid_argument);
  EXPECT_THROW(TruncateProject(inside, -2.0), std::invalid_argument);
}

TEST(TruncatedMean, NoiselessHandExample) {
  MechanismSpec spec = KlSpec(2, 2, 1.0, 2.0, 1.0);
  spec.truncation_override = 1.0;
  // (3, 4) has norm 5 and projects to (0.6, 0.8); (0.3, 0.4) stays put.
  std::vector<std::vector<double>> sample = {{3.0, 4.0}, {0.3, 0.4}};
  std::vector<double> mean =
      TruncatedMean(sample, spec, nullptr, NoiseMode::kDiagnosticNoNoise);
  ASSERT_EQ(mean.size(), 2u);
  EXPECT_NEAR(mean[0], 0.45, 1e-15);
  EXPECT_NEAR(mean[1], 0.6, 1e-15);
}

TEST(TruncatedMean, FlatAndNestedOverloadsAgree) {
  MechanismSpec spec = KlSpec(2, 3, 1.0, 2.0, 0.5);
  std::vector<std::vector<double>> sample = {
      {0.1, 0.2}, {5.0, -1.0}, {-0.4, 0.3}};
  std::vector<double> flat = {0.1, 0.2, 5.0, -1.0, -0.4, 0.3};
  RngStream rng_a(1, 0);
  RngStream rng_b(1, 0);
  EXPECT_EQ(TruncatedMean(sample, spec, &rng_a),
            TruncatedMean(flat, spec, &rng_b));

  EXPECT_THROW(TruncatedMean(std::vector<double>{1.0}, spec, &rng_a),
               std::invalid_argument);
  EXPECT_THROW(TruncatedMean(sample, spec, nullptr), std::invalid_argument);
}

TEST(TruncatedMean, NoiseFollowsDocumentedDraws) {
  // Gaussian variants add sigma * NextGaussian() coordinate by coordinate;
  // the smooth variant adds NextLaplace(scale). Replaying the stream must
  // reproduce the release exactly.
  MechanismSpec kl = KlSpec(3, 4, 1.0, 2.0, 0.5);
  std::vector<std::vector<double>> sample = {
      {0.1, 0.0, 0.2}, {0.4, -0.1, 0.0}, {2.0, 2.0, 2.0}, {0.0, 0.0, -0.3}};
  std::vector<double> noiseless =
      TruncatedMean(sample, kl, nullptr, NoiseMode::kDiagnosticNoNoise);
  RngStream rng(9, 3);
  std::vector<double> released = TruncatedMean(sample, kl, &rng);
  RngStream replay(9, 3);
  double sigma = std::sqrt(kl.GaussianVariance());
  for (std::size_t c = 0; c < 3; ++c) {
    EXPECT_DOUBLE_EQ(released[c], noiseless[c] + sigma * replay.NextGaussian());
  }

  MechanismSpec smooth = SmoothSpec(3, 4, 1.0, 2.0, 0.5);
  noiseless = TruncatedMean(sample, smooth, nullptr,
                            NoiseMode::kDiagnosticNoNoise);
  RngStream rng2(9, 4);
  released = TruncatedMean(sample, smooth, &rng2);
  RngStream replay2(9, 4);
  double scale = smooth.LaplaceScale();
  for (std::size_t c = 0; c < 3; ++c) {
    EXPECT_DOUBLE_EQ(released[c],
                     noiseless[c] + replay2.NextLaplace(scale));
  }
}

TEST(MeanSensitivity, HandExampleAndOrdering) {
  // T = 1, n = 2, d = 1: projections 0.5, 1 vs 0.5, -1.
  std::vector<std::vector<double>> a = {{0.5}, {3.0}};
  std::vector<std::vector<double>> b = {{0.5}, {-3.0}};
  MeanSensitivityReport report = MeanSensitivity(a, b, 1.0);
  EXPECT_NEAR(report.distance, 1.0, 1e-15);
  EXPECT_NEAR(report.pairwise_bound, 1.0, 1e-15);
  EXPECT_NEAR(report.hamming_bound, 1.0, 1e-15);

  // Strict ordering when the differing point moves less than 2T.
  a = {{0.1}, {0.2}, {0.3}};
  b = {{0.15}, {0.2}, {0.3}};
  report = MeanSensitivity(a, b, 1.0);
  EXPECT_NEAR(report.distance, 0.05 / 3.0, 1e-15);
  EXPECT_NEAR(report.pairwise_bound, 0.05 / 3.0, 1e-15);
  EXPECT_NEAR(report.hamming_bound, 2.0 / 3.0, 1e-15);
  EXPECT_LE(report.distance, report.pairwise_bound + 1e-15);
  EXPECT_LE(report.pairwise_bound, report.hamming_bound + 1e-15);
}

TEST(MeanSensitivity, OrderingHoldsOnRandomSamples) {
  RngStream rng(17, 6);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 5;
    const int d = 3;
    std::vector<std::vector<double>> a(n, std::vector<double>(d));
    std::vector<std::vector<double>> b(n, std::vector<double>(d));
    for (int i = 0; i < n; ++i) {
      for (int c = 0; c < d; ++c) {
        a[i][c] = 2.0 * rng.NextGaussian();
        b[i][c] = i % 2 == 0 ? a[i][c] : 2.0 * rng.NextGaussian();
      }
    }
    double t = 0.5 + rng.NextUniform();
    MeanSensitivityReport report = MeanSensitivity(a, b, t);
    EXPECT_LE(report.distance, report.pairwise_bound + 1e-12);
    EXPECT_LE(report.pairwise_bound, report.hamming_bound + 1e-12);
  }
}

// The KL calibration is exact: on worst-case neighboring samples (one point
// swapped between antipodes outside the truncation ball) the release's KL
// divergence equals eps_kl.
TEST(TruncatedMeanKlDivergence, WorstCaseNeighborsAttainEpsKl) {
  struct Config {
    int d;
    std::int64_t n;
    double r;
    double k;
    double eps_kl;
  };
  const Config configs[] = {
      {1, 10, 1.0, 2.0, 0.5},
      {2, 25, 1.0, 2.0, 0.25},
      {4, 100, 2.0, 3.0, 1.0},
      {3, 17, 0.5, 1.5, 0.05},
  };
  for (const Config& cfg : configs) {
    MechanismSpec spec = KlSpec(cfg.d, cfg.n, cfg.r, cfg.k, cfg.eps_kl);
    double t = spec.TruncationRadius();
    std::vector<double> far(static_cast<std::size_t>(cfg.d), 0.0);
    far[0] = 10.0 * t;
    std::vector<double> anti = far;
    anti[0] = -far[0];
    std::vector<std::vector<double>> a(static_cast<std::size_t>(cfg.n),
                                       std::vector<double>(
                                           static_cast<std::size_t>(cfg.d),
                                           0.0));
    std::vector<std::vector<double>> b = a;
    a[0] = far;
    b[0] = anti;
    EXPECT_NEAR(TruncatedMeanKlDivergence(a, b, spec), cfg.eps_kl,
                1e-9 * cfg.eps_kl);
  }
}

TEST(TruncatedMeanKlDivergence, RequiresKlVariant) {
  MechanismSpec smooth = SmoothSpec(1, 2, 1.0, 2.0, 0.5);
  std::vector<std::vector<double>> a = {{0.0}, {0.1}};
  EXPECT_THROW(TruncatedMeanKlDivergence(a, a, smooth), std::invalid_argument);
}

// The smooth release's worst log ratio never exceeds eps times the capped
// sample metric distance.
TEST(SmoothDpLogRatioBound, StaysWithinEpsTimesMetric) {
  RngStream rng(23, 8);
  MechanismSpec spec = SmoothSpec(2, 6, 1.0, 2.0, 0.8);
  double t = spec.TruncationRadius();
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<std::vector<double>> a(6, std::vector<double>(2));
    std::vector<std::vector<double>> b(6, std::vector<double>(2));
    for (int i = 0; i < 6; ++i) {
      for (int c = 0; c < 2; ++c) {
        a[i][c] = 3.0 * rng.NextGaussian();
        b[i][c] = i < 3 ? a[i][c] : 3.0 * rng.NextGaussian();
      }
    }
    double log_ratio = SmoothDpLogRatioBound(a, b, spec);
    double metric = SampleMetricDistance(a, b, t);
    EXPECT_LE(log_ratio, spec.eps * metric + 1e-12);
  }
}

TEST(SampleMetricDistance, CapsAtOnePerCoordinate) {
  std::vector<std::vector<double>> a = {{0.0}, {0.0}};
  std::vector<std::vector<double>> b = {{100.0}, {0.5}};
  // T = 1: first pair is capped at 2T, second contributes 0.5 / 2.
  EXPECT_NEAR(SampleMetricDistance(a, b, 1.0), 1.0 + 0.25, 1e-15);
  EXPECT_THROW(SampleMetricDistance(a, b, 0.0), std::invalid_argument);
}

TEST(ReleaseOneAtRandom, RowsAreEmpiricalDistributions) {
  const DiscreteChannel channel = ReleaseOneAtRandom({"a", "b"}, 2);
  ASSERT_EQ(channel.dataset_count(), 4u);
  EXPECT_EQ(channel.output_set(), channel.input_alphabet());
  EXPECT_EQ(channel.row(0), (std::vector<double>{1.0, 0.0}));    // a,a
  EXPECT_EQ(channel.row(1), (std::vector<double>{0.5, 0.5}));    // a,b
  EXPECT_EQ(channel.row(2), (std::vector<double>{0.5, 0.5}));    // b,a
  EXPECT_EQ(channel.row(3), (std::vector<double>{0.0, 1.0}));    // b,b
}

// Publishing a random entry is not eps-DP for any finite eps, but it is
// TV-private at exactly 1/n.
TEST(ReleaseOneAtRandom, PrivacyLevelsMatchTheory) {
  const DiscreteChannel channel = ReleaseOneAtRandom({"a", "b"}, 2);
  EXPECT_TRUE(std::isinf(TightPureDpEpsilon(channel)));
  EXPECT_NEAR(
      TightFPrivacyBound(channel, FDivergenceSpec::TotalVariation()), 0.5,
      1e-12);
  // At delta_ch = 0 the conditional-test level coincides with the worst
  // conditional TV, which this channel attains at 1/n.
  EXPECT_NEAR(TightChtpEpsilon(channel, 0.0), 0.5, 1e-12);

  const DiscreteChannel single = ReleaseOneAtRandom({"a", "b"}, 1);
  EXPECT_NEAR(TightChtpEpsilon(single, 0.0), 1.0, 1e-12);
}

}  // namespace
}  // namespace privkit
