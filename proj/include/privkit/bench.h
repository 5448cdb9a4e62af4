// Copyright 2026 The Privkit Authors. All rights reserved.
// Use of this source code is governed by an Apache-style license that can be
// found in the LICENSE file.

#ifndef PRIVKIT_BENCH_H_
#define PRIVKIT_BENCH_H_

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "privkit/histogram.h"
#include "privkit/mechanisms.h"
#include "privkit/rng.h"

namespace privkit {

// Sampling families used as worst cases in the risk harness. The supremum
// over distributions is approximated by the family's designated hard member,
// never searched.
enum class FamilyKind {
  // Uniform on the sphere of radius r in R^d: ||X|| = r almost surely, the
  // bounded (k = infinity) member. Mean zero.
  kBoundedBall,
  // Scalar atom pair: X = r * delta^{-1/k} with probability delta, else 0.
  // E|X|^k = r^k exactly; mean r * delta^{1 - 1/k}.
  kTwoPoint,
  // Density 1 + a(x - 1/2) on [0, 1], |a| <= 1. Mean 1/2 + a/12.
  kLipschitzDensity,
};

const char* FamilyKindName(FamilyKind kind);
FamilyKind FamilyKindFromName(const std::string& name);

struct DistributionFamilySpec {
  FamilyKind kind = FamilyKind::kBoundedBall;
  int d = 1;
  double r = 1.0;            // kBoundedBall, kTwoPoint
  double k_moments = 2.0;    // kTwoPoint moment order, > 1
  double delta_mass = 0.1;   // kTwoPoint atom probability, in (0, 1]
  double slope = 0.0;        // kLipschitzDensity coefficient a

  void Validate() const;
  int Dimension() const { return kind == FamilyKind::kBoundedBall ? d : 1; }
  std::vector<double> TrueMean() const;
  // Density at x in [0, 1] (kLipschitzDensity only).
  double Density(double x) const;
  // Appends count * Dimension() coordinates, row-major, to *flat.
  void Sample(std::int64_t count, RngStream* rng,
              std::vector<double>* flat) const;

  nlohmann::json ToJson() const;
  static DistributionFamilySpec FromJson(const nlohmann::json& j);
};

struct RiskPoint {
  std::int64_t n = 0;
  int k_bins = 0;  // 0 for mean-estimation sweeps
  double risk_mean = 0.0;
  double risk_stderr = 0.0;
  int reps = 0;
};

// One swept risk curve. `axis` names the variable that varies across points
// ("n" or "k_bins"); fitted_slope is NaN until FitExponent has run.
struct RiskCurve {
  std::string mechanism;  // "truncated-mean" | "histogram"
  std::string variant;    // mechanism variant, "no-noise", or "laplace"
  std::string family;
  int d = 1;
  double k_moments = 0.0;  // NaN when not applicable
  double r = 0.0;          // NaN when not applicable
  double eps = 0.0;        // privacy level of the variant; NaN when absent
  double delta = 0.0;      // NaN when absent
  std::uint64_t seed = 0;
  std::string axis;
  std::vector<RiskPoint> points;
  double fitted_slope;  // NaN until fit
  int fit_lo = 0;       // fit window [fit_lo, fit_hi)
  int fit_hi = 0;

  RiskCurve();
  double AxisValue(int i) const;
  nlohmann::json ToJson() const;
};

// Monte Carlo risk of the truncated-mean release over a grid of sample
// sizes. Replication t at grid point g draws from the counter stream
// (master_seed, (sweep_ordinal << 48) | (g << 32) | t), so results are
// byte-identical for a given seed regardless of `jobs`. Requires
// sweep_ordinal < 2^16, grid size < 2^16, family.Dimension() == spec.d,
// reps >= 100.
RiskCurve MeanRiskSweep(const MechanismSpec& spec, NoiseMode mode,
                        const DistributionFamilySpec& family,
                        const std::vector<std::int64_t>& n_values, int reps,
                        std::uint64_t master_seed, int jobs,
                        std::uint64_t sweep_ordinal);

// Monte Carlo L2 risk of the private histogram against the family density
// over a grid of bin counts, at fixed n. The per-replication risk is exact
// given the released heights: sum_j w (h_j - fbar_j)^2 + a^2 w^2 / 12 with
// w = 1/k and fbar_j the bin average of the density. Same stream addressing
// and preconditions as MeanRiskSweep; family must be kLipschitzDensity.
RiskCurve HistogramRiskSweep(const HistogramSpec& spec,
                             const DistributionFamilySpec& family,
                             std::int64_t n,
                             const std::vector<int>& k_bins_values, int reps,
                             std::uint64_t master_seed, int jobs,
                             std::uint64_t sweep_ordinal);

// Least-squares slope of log(risk_mean) against log(axis value) over the
// half-open window [lo, hi). Needs at least 4 points, all with positive
// risk. Records the window and slope on the curve and returns the slope.
double FitExponent(RiskCurve* curve, int lo, int hi);

// Pinned CSV rendering of a set of curves, one row per grid point:
//   mechanism,variant,family,d,k_moments,r,eps,delta,n,k_bins,reps,
//   risk_mean,risk_stderr,seed
// Reals print as %.17g, infinities as "inf"/"-inf", absent values (NaN) as
// empty cells; k_bins is empty on mean-estimation rows.
std::string RiskCurvesToCsv(const std::vector<RiskCurve>& curves);

// Configuration for the headline rate table: bounded-ball family, k =
// infinity, sweeping n over a privacy-dominated grid and a
// statistics-dominated grid at two dimensions.
//
// The privacy grid must sit below the noise/sampling crossover of the
// mechanism under test or the fitted slope mixes the two regimes. For the
// smooth variant at d = 4, eps = 0.5, r = 1 the noise term is 512/n^2,
// crossing 1/n at n = 512; the default grid {8..64} keeps the noise share
// of the risk at 98% or better, while {4096..32768} keeps it below 2%.
struct RateTableConfig {
  int d_small = 4;
  int d_large = 16;
  double eps = 0.5;
  double r = 1.0;
  std::vector<std::int64_t> privacy_grid = {8, 16, 32, 64};
  std::vector<std::int64_t> statistical_grid = {4096, 8192, 16384, 32768};
  int reps = 1000;
  std::uint64_t master_seed = 0;
  int jobs = 1;

  void Validate() const;
  nlohmann::json ToJson() const;
  static RateTableConfig FromJson(const nlohmann::json& j);
};

// One checked quantity in the rate table: a fitted slope or a
// dimension-dependence ratio, with its theoretical value and, when `gated`,
// an accept interval. Ratio rows compare risk at the first privacy-grid
// point, where the noise term dominates; later points are statistically
// contaminated and no longer separate the dimensions.
struct RateTableRow {
  std::string label;
  std::string quantity;  // "slope" | "ratio"
  double measured = 0.0;
  double expected = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  bool gated = false;
  bool holds = false;
  RiskCurve curve;

  nlohmann::json ToJson() const;
};

struct RateTableReport {
  RateTableConfig config;
  std::vector<RateTableRow> rows;
  bool holds = false;  // conjunction over gated rows

  nlohmann::json ToJson() const;
};

RateTableReport RunRateTable(const RateTableConfig& config);

// One Monte Carlo check of the truncation-bias bound
//   ||E pi_T(X) - E X|| <= E||X||^k / ((k - 1) T^(k-1))
// and of variance non-increase under projection, via the paired-sample
// identity 2 Var(Y) = E||Y - Y'||^2 with the pointwise gap
//   D = (||X - X'||^2 - ||pi_T(X) - pi_T(X')||^2) / 2 >= 0.
struct LemmaCaseResult {
  std::string name;
  double truncation_radius = 0.0;
  double bias_norm = 0.0;
  double bias_bound = 0.0;
  double bias_stderr = 0.0;
  double variance_gap_mean = 0.0;
  double variance_gap_stderr = 0.0;
  double min_pointwise_gap = 0.0;
  bool bias_holds = false;
  bool variance_holds = false;
  bool holds = false;

  nlohmann::json ToJson() const;
};

struct LemmaSuiteReport {
  std::uint64_t master_seed = 0;
  std::int64_t draws_per_case = 0;
  std::vector<LemmaCaseResult> cases;
  bool holds = false;

  nlohmann::json ToJson() const;
};

// Runs the two lemma checks on 20 seeded (distribution, T) configurations
// at 1e5 draws each, with 4 * stderr statistical slack on the bias check.
// Cases 0 and 1 are fixed boundary cases (support inside the ball; T far
// beyond the support); the rest mix multi-dimensional atom pairs with
// scalar lognormals, whose moments are analytic. Streams use
// (master_seed, (0xFFFF << 48) | case_index), disjoint from sweep streams.
LemmaSuiteReport TruncationPropertySuite(std::uint64_t master_seed);

}  // namespace privkit

#endif  // PRIVKIT_BENCH_H_
