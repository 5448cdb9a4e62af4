// Copyright 2026 The Privkit Authors. All rights reserved.
// Use of this source code is governed by an Apache-style license that can be
// found in the LICENSE file.

#ifndef PRIVKIT_MECHANISMS_H_
#define PRIVKIT_MECHANISMS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "privkit/channel.h"
#include "privkit/rng.h"

namespace privkit {

// Noise calibrations for the truncated-mean release. Each variant targets a
// different privacy notion:
//   kKlGaussian:      KL divergence between neighbor outputs <= eps_kl.
//   kApproxDpGaussian: (eps, delta) approximate differential privacy.
//   kSmoothDpLaplace: log-density ratio <= eps * d_rho for all sample pairs,
//                     where rho is the 2T-capped Euclidean metric.
enum class MechanismVariant { kKlGaussian, kApproxDpGaussian, kSmoothDpLaplace };

const char* MechanismVariantName(MechanismVariant variant);
MechanismVariant MechanismVariantFromName(const std::string& name);

// kDiagnosticNoNoise suppresses the privacy noise entirely. The result is NOT
// private in any sense; it exists so benchmarks can isolate sampling error.
enum class NoiseMode { kPrivate, kDiagnosticNoNoise };

// Parameters of the truncated-mean release: project every sample point onto
// the ball of radius T, average, and add variant noise. T defaults to the
// variant's rate-optimal radius for data with E||X||^k_moments <= r^k_moments
// and can be overridden.
struct MechanismSpec {
  MechanismVariant variant = MechanismVariant::kKlGaussian;
  int d = 1;
  std::int64_t n = 1;
  double r = 1.0;
  // Number of bounded moments, > 1; +infinity means ||X|| <= r almost surely,
  // in which case the default truncation radius is r itself.
  double k_moments = 2.0;
  double eps = 0.0;     // kApproxDpGaussian, kSmoothDpLaplace
  double delta = 0.0;   // kApproxDpGaussian
  double eps_kl = 0.0;  // kKlGaussian
  std::optional<double> truncation_override;

  void Validate() const;
  double TruncationRadius() const;

  // Per-coordinate Gaussian variance (Gaussian variants only).
  double GaussianVariance() const;
  // Per-coordinate Laplace scale (smooth variant only).
  double LaplaceScale() const;
  // E||W||^2 of the noise vector, in closed form.
  double NoiseSecondMoment() const;

  nlohmann::json ToJson() const;
  static MechanismSpec FromJson(const nlohmann::json& j);
};

// Euclidean projection of x onto the centered ball of radius `radius`.
std::vector<double> TruncateProject(const std::vector<double>& x,
                                    double radius);

// The truncated-mean release on a sample of spec.n points in R^spec.d,
// given row-major in `flat` (flat.size() == n * d). Noise draws come from
// `rng` coordinate by coordinate; with NoiseMode::kDiagnosticNoNoise the rng
// may be null and the (non-private) noiseless average is returned.
std::vector<double> TruncatedMean(const std::vector<double>& flat,
                                  const MechanismSpec& spec, RngStream* rng,
                                  NoiseMode mode = NoiseMode::kPrivate);

// Convenience overload for a sample given as points.
std::vector<double> TruncatedMean(
    const std::vector<std::vector<double>>& sample, const MechanismSpec& spec,
    RngStream* rng, NoiseMode mode = NoiseMode::kPrivate);

// How far the truncated means of two equal-size samples can move, together
// with the two upper bounds that calibrate the noise:
//   distance <= pairwise_bound = (1/n) sum_i min(||a_i - b_i||, 2T)
//            <= hamming_bound  = (2T/n) * #{i : a_i != b_i}.
struct MeanSensitivityReport {
  double distance = 0.0;
  double pairwise_bound = 0.0;
  double hamming_bound = 0.0;
};
MeanSensitivityReport MeanSensitivity(
    const std::vector<std::vector<double>>& sample_a,
    const std::vector<std::vector<double>>& sample_b, double truncation_radius);

// Exact KL divergence between the output distributions of the kKlGaussian
// release on two samples: ||v - v'||^2 / (2 sigma^2) for equal-covariance
// Gaussians.
double TruncatedMeanKlDivergence(const std::vector<std::vector<double>>& a,
                                 const std::vector<std::vector<double>>& b,
                                 const MechanismSpec& spec);

// Supremum over outputs of |log p(z|a) / p(z|b)| for the kSmoothDpLaplace
// release: kappa * ||v - v'||_1 with kappa the per-coordinate Laplace rate.
double SmoothDpLogRatioBound(const std::vector<std::vector<double>>& a,
                             const std::vector<std::vector<double>>& b,
                             const MechanismSpec& spec);

// The capped-metric sample distance the smooth guarantee is measured in:
// (1 / 2T) sum_i min(||a_i - b_i||, 2T).
double SampleMetricDistance(const std::vector<std::vector<double>>& a,
                            const std::vector<std::vector<double>>& b,
                            double truncation_radius);

// The channel that publishes one uniformly chosen entry of the dataset: each
// row is the dataset's empirical distribution over the alphabet. A standard
// example of a release that no finite differential-privacy budget certifies.
DiscreteChannel ReleaseOneAtRandom(const std::vector<std::string>& alphabet,
                                   int n,
                                   std::size_t cap = kDefaultEnumerationCap);

}  // namespace privkit

#endif  // PRIVKIT_MECHANISMS_H_
