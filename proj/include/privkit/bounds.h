// Copyright 2026 The Privkit Authors. All rights reserved.
// Use of this source code is governed by an Apache-style license that can be
// found in the LICENSE file.
//
// Minimax lower-bound machinery: the data-processing contraction for private
// channels with exact small-instance verification, the two-point and
// mixture-packing constructions behind the mean-estimation bounds, and
// closed-form bound evaluators. Evaluators report the proof constants exactly
// as derived; they never silently improve them.

#ifndef PRIVKIT_BOUNDS_H_
#define PRIVKIT_BOUNDS_H_

#include <cstdint>
#include <vector>

#include "json.hpp"
#include "privkit/channel.h"
#include "privkit/distribution.h"
#include "privkit/rng.h"

namespace privkit {

// Slack for exact small-instance inequality verification. Tighter than the
// audit slack because both sides are computed by exact enumeration.
inline constexpr double kExactCheckSlack = 1e-12;

// TV(M0, M1) <= min(2 n eps TV(p0, p1), TV(p0^n, p1^n)) for the output
// marginals M0, M1 of any eps-TV-private channel on n-sample datasets.
struct ContractionBound {
  double value = 0.0;
  double linear_term = 0.0;
  double product_term = 0.0;  // meaningful iff !product_term_skipped
  bool product_term_skipped = false;

  nlohmann::json ToJson() const;
};
ContractionBound ContractionTvBound(const FiniteDistribution& p0,
                                    const FiniteDistribution& p1,
                                    std::int64_t n, double eps,
                                    std::size_t cap = kDefaultEnumerationCap);

// Non-iid linear term 2 eps sum_i TV(components0[i], components1[i]); the iid
// case with equal components reduces to 2 n eps TV(p0, p1).
double ContractionLinearTerm(const std::vector<FiniteDistribution>& components0,
                             const std::vector<FiniteDistribution>& components1,
                             double eps);

// Exact verification of the contraction inequality on one instance: audits
// the channel's tight TV privacy level, computes both output marginals by
// enumeration, and checks TV(M0, M1) against the bound at the tight level.
struct ContractionReport {
  double eps_tv = 0.0;       // audited tight TV privacy level of the channel
  double marginal_tv = 0.0;  // exact TV of the two output marginals
  ContractionBound bound;    // evaluated at eps_tv
  bool holds = false;        // marginal_tv <= bound.value + kExactCheckSlack

  nlohmann::json ToJson() const;
};
ContractionReport VerifyContraction(const DiscreteChannel& channel,
                                    const FiniteDistribution& p0,
                                    const FiniteDistribution& p1,
                                    std::size_t cap = kDefaultEnumerationCap);

// Two-point family for the TV-private mean estimation bound: three atoms
// {-M, 0, +M} with M = r * delta_mass^{-1/k}, where p0 puts mass delta_mass
// on -M and p1 the same mass on +M. Both have k-th absolute moment exactly
// r^k, means -/+ r * delta_mass^{1-1/k}, and TV(p0, p1) = delta_mass.
struct TwoPointConstruction {
  double magnitude;     // M
  double theta0;        // mean under p0
  double theta1;        // mean under p1
  double delta_mass;
  std::vector<std::string> atom_labels;
  std::vector<double> atom_values;
  FiniteDistribution p0;
  FiniteDistribution p1;
};
TwoPointConstruction TwoPointMeanConstruction(double r, double k_moments,
                                              double delta_mass);

// (r^2 / 4) * delta_star^{2 - 2/k} with delta_star = min(1, 1/(4 n eps)):
// the minimax squared-error lower bound for mean estimation over
// distributions with k-th moment at most r^k, against eps-TV-private
// channels. `clamped` flags delta_star hitting 1.
struct TvMeanBound {
  double value = 0.0;
  double delta_star = 0.0;
  bool clamped = false;

  nlohmann::json ToJson() const;
};
TvMeanBound TvMeanLowerBound(double r, double k_moments, std::int64_t n,
                             double eps);

// t / (32 n eps): support-estimation lower bound against eps-TV-private
// channels on uniform distributions over [0, t].
double UniformSupportLowerBound(double t, std::int64_t n, double eps);

// End-to-end check of the estimation-to-testing chain on one channel over
// the two-point atoms at delta_star: exact Le Cam term >= contraction floor
// >= closed-form bound, with the audited tight TV level as precondition.
struct EstimationChainReport {
  double eps_requested = 0.0;
  double eps_tight = 0.0;
  double delta_star = 0.0;
  double mean_gap = 0.0;          // theta1 - theta0
  double marginal_tv = 0.0;       // exact TV of the output marginals
  double tv_bound = 0.0;          // contraction bound at the tight level
  double le_cam_term = 0.0;       // (gap/2)^2 / 2 * (1 - marginal_tv)
  double contraction_floor = 0.0; // (gap/2)^2 / 2 * (1 - tv_bound)
  double closed_form = 0.0;       // TvMeanLowerBound value
  bool holds = false;

  nlohmann::json ToJson() const;
};
// The channel's input alphabet must be exactly the two-point atom labels for
// delta_star = min(1, 1/(4 n eps)); build it via TwoPointMeanConstruction.
// Throws std::invalid_argument if the channel's tight TV level exceeds eps.
EstimationChainReport EstimationTestingChain(const DiscreteChannel& channel,
                                             double r, double k_moments,
                                             double eps,
                                             std::size_t cap = kDefaultEnumerationCap);

// Maximal 1/2-separated subset of the d-dimensional unit ball, built by
// randomized greedy insertion. Maximality makes the set a 1/2-covering, so
// its cardinality is at least 2^d.
struct PackingSet {
  int d = 0;
  std::vector<std::vector<double>> points;
  double separation = 0.0;        // exact min pairwise L2 distance
  std::size_t greedy_trials = 0;  // proposals consumed by the greedy phase
  std::size_t probe_insertions = 0;  // points added during certification

  nlohmann::json ToJson() const;
};
// Greedy budget is 200 * 2^d proposals, then 1e5 probe points certify
// maximality; any uncovered probe is itself inserted. d <= 8
// (ResourceCapError above that).
PackingSet GreedyPacking(int d, RngStream* rng);

// Mixture family for the packing bound: P_v = (1 - p) point{0} + p point{s v}
// with atom scale s = p^{-1/k} r, so that the mean is theta_v =
// p^{1 - 1/k} r v and the k-th moment of the radius is r^k ||v||^k <= r^k.
struct MixtureConstruction {
  double p = 0.0;
  double scale = 0.0;
  std::vector<std::vector<double>> support_points;  // s * v per packing point
  std::vector<std::vector<double>> thetas;          // p * support point
  double separation = 0.0;  // min pairwise L2 distance between thetas

  // k-th moment of ||X|| under the mixture indexed by `which`.
  double RadialMoment(std::size_t which, double k_moments) const;
  nlohmann::json ToJson() const;
};
MixtureConstruction MakeMixtureConstruction(const PackingSet& packing, double r,
                                            double k_moments, double p);

// Average multi-way test error lower bound for (eps, delta)-private
// estimators over an m-point packing:
//   (m-1) * (e^{-eps K}/2 - delta * (1 - e^{-eps K})/(1 - e^{-eps}))
//   / (1 + (m-1) e^{-eps K})
// with K = np_ceil, clamped below at 0. eps = 0 is allowed only with
// delta = 0 (the geometric factor degenerates otherwise).
double PackingLowerBound(int m, int np_ceil, double eps, double delta);

// (r^2 / 32) * p^{2 - 2/k} with the proof's mixture weight
//   p = (1/(n eps)) min(d/2 - eps, log((1 - e^{-eps}) / (4 delta e^{eps})))
// clamped to [0, 1]. d = 1 routes to the two-point TV path. `asymptotic` is
// the reported rate r^2/n + r^2 min(1, ((d^2 ^ log^2(1/delta))/(n eps)^2)^{(k-1)/k}).
struct DpMeanBound {
  double value = 0.0;
  double p = 0.0;
  bool delta_term_dropped = false;  // log argument was nonpositive
  bool p_clamped = false;           // p fell outside [0, 1]
  bool used_two_point_route = false;
  double asymptotic = 0.0;

  nlohmann::json ToJson() const;
};
DpMeanBound DpMeanLowerBound(double r, double k_moments, int d, std::int64_t n,
                             double eps, double delta);

// Exhaustive verification of the mass-transfer inequality behind the packing
// bound: for mixtures P_v = (1-p) point{base} + p point{v} fed through an
// approximately private channel,
//   M_v(A) >= e^{-eps K} (M_v'(A) - 1/2) - delta_tight * sum_{i<K} e^{-eps i}
// for every output subset A and both orders of (v, v'), where K = ceil(n p)
// and delta_tight is the channel's audited tight delta at eps.
struct MassEverywhereReport {
  double eps = 0.0;
  double delta_used = 0.0;  // audited tight delta(eps)
  double p = 0.0;
  int k_ceil = 0;
  std::size_t subsets_checked = 0;
  double min_slack = 0.0;  // min over (v, v', A) of LHS - RHS
  bool holds = false;      // min_slack >= -kExactCheckSlack

  nlohmann::json ToJson() const;
};
MassEverywhereReport VerifyMassEverywhere(const DiscreteChannel& channel,
                                          double eps, double p,
                                          std::size_t base_atom,
                                          std::size_t atom_v,
                                          std::size_t atom_vp,
                                          std::size_t cap = kDefaultEnumerationCap);

// Nonparametric density-estimation rate n^{-2/(2+d)} + (n eps)^{-2/(1+d)}.
// A rate only: the unspecified universal constant is not included.
double DensityLowerRate(int d, std::int64_t n, double eps);

}  // namespace privkit

#endif  // PRIVKIT_BOUNDS_H_
