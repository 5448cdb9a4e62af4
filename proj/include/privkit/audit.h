// Copyright 2026 The Privkit Authors. All rights reserved.
// Use of this source code is governed by an Apache-style license that can be
// found in the LICENSE file.
//
// Exhaustive privacy audits for finite channels. Every audit computes the
// tight value of the audited quantity (the smallest parameter the channel
// actually satisfies) and compares it against the requested parameter, so a
// verdict is a certificate in both directions: `holds` means the guarantee is
// met, and a failed verdict carries a concrete witness.

#ifndef PRIVKIT_AUDIT_H_
#define PRIVKIT_AUDIT_H_

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "privkit/channel.h"
#include "privkit/divergence.h"

namespace privkit {

// Comparison slack for "tight <= requested": absolute, applied on the scale
// of the audited quantity. Keeps float noise from flipping verdicts at
// equality without masking real violations.
inline constexpr double kVerdictSlack = 1e-9;

// Conditional-test audits enumerate all output subsets; 2^16 sets is the
// largest search this library will attempt.
inline constexpr int kChtpMaxOutputs = 16;

enum class PrivacyDefinition {
  kPureDp,       // log-ratio bound on neighboring rows
  kApproxDp,     // hockey-stick mass bound at a given eps
  kSmoothDp,     // log-ratio bounded by eps times dataset metric, all pairs
  kFDivergence,  // f-divergence bound on neighboring rows
  kTesting,      // testing-error form of the approx-DP bound
  kChtp,         // conditional hypothesis-test error bound
};

std::string PrivacyDefinitionName(PrivacyDefinition definition);

// Dataset metric for smooth audits: distance between datasets is
// (1/r_bound) * sum_i rho(x_i, x'_i). `rho` is indexed by position in
// `alphabet`, which must match the audited channel's input alphabet.
struct MetricSpec {
  std::vector<std::string> alphabet;
  std::vector<std::vector<double>> rho;
  double r_bound = 1.0;

  void Validate() const;
  nlohmann::json ToJson() const;
  static MetricSpec FromJson(const nlohmann::json& j);
};

struct AuditWitness {
  std::string dataset_a;
  std::string dataset_b;
  // Output set where the violation is attained; a single outcome for
  // log-ratio audits, the maximizing event otherwise. Empty when the witness
  // is a whole-row divergence.
  std::vector<std::string> outcome_set;
  double value = 0.0;

  nlohmann::json ToJson() const;
};

struct PrivacyVerdict {
  PrivacyDefinition definition = PrivacyDefinition::kPureDp;
  bool holds = false;
  double tight = 0.0;
  double requested = 0.0;
  nlohmann::json params;
  std::optional<AuditWitness> witness;  // present iff !holds

  nlohmann::json ToJson() const;
};

// Tight values. Each scans every neighboring dataset pair of the channel
// (every pair for the smooth variant) and returns the exact extremum;
// +infinity signals an unbounded quantity.
double TightPureDpEpsilon(const DiscreteChannel& channel);
double TightApproxDpDelta(const DiscreteChannel& channel, double eps);
double TightTestingDelta(const DiscreteChannel& channel, double eps);
double TightFPrivacyBound(const DiscreteChannel& channel,
                          const FDivergenceSpec& divergence);
double TightSmoothDpEpsilon(const DiscreteChannel& channel,
                            const MetricSpec& metric);
// Largest conditional total variation over neighboring rows and admissible
// output events (mass at least delta_ch under both rows).
double TightChtpEpsilon(const DiscreteChannel& channel, double delta_ch);

PrivacyVerdict AuditPureDp(const DiscreteChannel& channel, double eps);
PrivacyVerdict AuditApproxDp(const DiscreteChannel& channel, double eps,
                             double delta);
// Same guarantee as AuditApproxDp through the testing-error identity
// delta = max over pairs of (1 - sum_theta min(q(theta|x), e^eps q(theta|x'))).
// Kept as an independent arithmetic route so the two can cross-check.
PrivacyVerdict AuditTestingBound(const DiscreteChannel& channel, double eps,
                                 double delta);
PrivacyVerdict AuditSmoothDp(const DiscreteChannel& channel,
                             const MetricSpec& metric, double eps);
PrivacyVerdict AuditFPrivacy(const DiscreteChannel& channel,
                             const FDivergenceSpec& divergence, double bound);
PrivacyVerdict AuditChtp(const DiscreteChannel& channel, double eps_ch,
                         double delta_ch);

// Parameter maps between approximate DP and the conditional-test guarantee.
struct ChtpParams {
  double eps_ch = 0.0;
  double delta_ch = 0.0;
};

// (eps, delta)-DP implies the conditional-test guarantee at these parameters.
ChtpParams ChtpParamsFromDp(double eps, double delta);

// Conditional-test guarantee at (eps_ch, delta_ch) with eps_ch < 1 implies
// (eps, delta)-DP at these parameters.
struct DpParams {
  double eps = 0.0;
  double delta = 0.0;
};
DpParams DpParamsFromChtp(double eps_ch, double delta_ch);

// Constructive converse: if the channel fails (eps, delta)-DP, there is a
// randomized conditional test at eps_ch = tanh(eps/4), delta_ch =
// delta * e^{-eps/2} whose error sum drops below 1 - eps_ch while both
// conditioning masses stay above delta_ch. The witness is built from the
// maximizing hockey-stick event and re-verified numerically before return;
// found == false means the channel satisfies (eps, delta)-DP.
struct ChtpConverseWitness {
  bool found = false;
  std::string dataset_a;
  std::string dataset_b;
  std::vector<std::string> upper_set;  // outcomes with q(.|a) > e^eps q(.|b)
  double hockey_stick = 0.0;           // violating mass, > delta
  double eps_ch = 0.0;
  double delta_ch = 0.0;
  double error_sum = 0.0;   // conditional test error sum, < 1 - eps_ch
  double mass_a = 0.0;      // conditioning-event mass under dataset_a
  double mass_b = 0.0;      // conditioning-event mass under dataset_b

  nlohmann::json ToJson() const;
};
ChtpConverseWitness FindChtpConverseWitness(const DiscreteChannel& channel,
                                            double eps, double delta);

// Verifies that post-processing by `post` (a single-input channel on the
// audited channel's output set) does not increase the tight pure-DP,
// total-variation, or KL privacy levels.
struct InformationProcessingReport {
  double pure_before = 0.0;
  double pure_after = 0.0;
  double tv_before = 0.0;
  double tv_after = 0.0;
  double kl_before = 0.0;
  double kl_after = 0.0;
  bool holds = false;

  nlohmann::json ToJson() const;
};
InformationProcessingReport CheckInformationProcessing(
    const DiscreteChannel& channel, const DiscreteChannel& post);

// Exact delta(eps) profile of the Gaussian mechanism with the given L2
// sensitivity and noise scale:
//   delta = Phi(s/(2 sigma) - eps sigma/s) - e^eps Phi(-s/(2 sigma) - eps sigma/s).
double GaussianDeltaProfile(double sensitivity, double sigma, double eps);

}  // namespace privkit

#endif  // PRIVKIT_AUDIT_H_
