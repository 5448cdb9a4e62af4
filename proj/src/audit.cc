// Copyright 2026 The Privkit Authors. All rights reserved.
// Use of this source code is governed by an Apache-style license that can be
// found in the LICENSE file.

#include "privkit/audit.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <unordered_set>

#include "privkit/errors.h"
#include "privkit/jsonio.h"

namespace privkit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void ValidateEps(double eps, const char* what) {
  if (std::isnan(eps) || eps < 0.0) {
    throw std::invalid_argument(std::string(what) + " must be >= 0");
  }
}

void ValidateProbability(double v, const char* what) {
  if (std::isnan(v) || v < 0.0 || v > 1.0) {
    throw std::invalid_argument(std::string(what) + " must be in [0, 1]");
  }
}

// Witness slot tracked by dataset index during a scan; converted to labels
// only once at the end.
struct WitnessTrack {
  bool set = false;
  std::size_t a = 0;
  std::size_t b = 0;
  std::vector<std::size_t> outcomes;
  double value = 0.0;
};

AuditWitness MakeWitness(const DiscreteChannel& channel,
                         const WitnessTrack& track) {
  AuditWitness w;
  w.dataset_a = channel.DatasetKey(track.a);
  w.dataset_b = channel.DatasetKey(track.b);
  for (std::size_t t : track.outcomes) {
    w.outcome_set.push_back(channel.output_set()[t]);
  }
  w.value = track.value;
  return w;
}

// Largest |log(p_t / q_t)| over outcomes charged by at least one row;
// +infinity when exactly one row charges some outcome. The returned witness
// orientation has the larger probability on side a.
struct LogRatioScan {
  double value = 0.0;
  std::size_t outcome = 0;
  bool a_side_larger = true;
};

LogRatioScan MaxAbsLogRatio(const std::vector<double>& p,
                            const std::vector<double>& q) {
  LogRatioScan best;
  for (std::size_t t = 0; t < p.size(); ++t) {
    const double pt = p[t];
    const double qt = q[t];
    if (pt == 0.0 && qt == 0.0) continue;
    double v;
    bool a_larger;
    if (pt == 0.0 || qt == 0.0) {
      v = kInf;
      a_larger = pt > 0.0;
    } else {
      const double r = std::log(pt / qt);
      v = std::abs(r);
      a_larger = r >= 0.0;
    }
    if (v > best.value) {
      best.value = v;
      best.outcome = t;
      best.a_side_larger = a_larger;
      if (std::isinf(v)) break;
    }
  }
  return best;
}

// Hockey-stick mass sum_t max(p_t - e^eps q_t, 0) together with the attaining
// event. Outcomes with q_t = 0 contribute p_t even when e^eps overflows.
struct HockeyStick {
  double mass = 0.0;
  std::vector<std::size_t> upper_set;
};

HockeyStick HockeyStickMass(const std::vector<double>& p,
                            const std::vector<double>& q, double eps) {
  const double eeps = std::exp(eps);
  HockeyStick hs;
  long double acc = 0.0L;
  for (std::size_t t = 0; t < p.size(); ++t) {
    if (q[t] == 0.0) {
      if (p[t] > 0.0) {
        acc += p[t];
        hs.upper_set.push_back(t);
      }
      continue;
    }
    const double diff = p[t] - eeps * q[t];
    if (diff > 0.0) {
      acc += diff;
      hs.upper_set.push_back(t);
    }
  }
  hs.mass = static_cast<double>(acc);
  return hs;
}

// Testing-error route to the same quantity: 1 - sum_t min(p_t, e^eps q_t).
double TestingMass(const std::vector<double>& p, const std::vector<double>& q,
                   double eps) {
  const long double eeps = std::exp(static_cast<long double>(eps));
  long double acc = 0.0L;
  for (std::size_t t = 0; t < p.size(); ++t) {
    if (q[t] == 0.0) continue;
    acc += std::min(static_cast<long double>(p[t]),
                    eeps * static_cast<long double>(q[t]));
  }
  const long double delta = 1.0L - acc;
  return delta > 0.0L ? static_cast<double>(delta) : 0.0;
}

PrivacyVerdict MakeVerdict(PrivacyDefinition definition, double tight,
                           double requested, nlohmann::json params,
                           const DiscreteChannel& channel,
                           const WitnessTrack& track) {
  PrivacyVerdict verdict;
  verdict.definition = definition;
  verdict.tight = tight;
  verdict.requested = requested;
  verdict.params = std::move(params);
  verdict.holds = tight <= requested + kVerdictSlack;
  if (!verdict.holds && track.set) {
    verdict.witness = MakeWitness(channel, track);
  }
  return verdict;
}

}  // namespace

std::string PrivacyDefinitionName(PrivacyDefinition definition) {
  switch (definition) {
    case PrivacyDefinition::kPureDp:
      return "pure-dp";
    case PrivacyDefinition::kApproxDp:
      return "approx-dp";
    case PrivacyDefinition::kSmoothDp:
      return "smooth-dp";
    case PrivacyDefinition::kFDivergence:
      return "f-divergence";
    case PrivacyDefinition::kTesting:
      return "testing";
    case PrivacyDefinition::kChtp:
      return "chtp";
  }
  throw std::invalid_argument("unknown privacy definition");
}

void MetricSpec::Validate() const {
  if (alphabet.empty()) {
    throw std::invalid_argument("metric: alphabet must be non-empty");
  }
  std::unordered_set<std::string> seen;
  for (const auto& label : alphabet) {
    if (label.empty() || !seen.insert(label).second) {
      throw std::invalid_argument("metric: alphabet labels must be unique and non-empty");
    }
  }
  const std::size_t m = alphabet.size();
  if (rho.size() != m) {
    throw std::invalid_argument("metric: rho must be square over the alphabet");
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (rho[i].size() != m) {
      throw std::invalid_argument("metric: rho must be square over the alphabet");
    }
    for (std::size_t j = 0; j < m; ++j) {
      const double v = rho[i][j];
      if (std::isnan(v) || std::isinf(v) || v < 0.0) {
        throw std::invalid_argument("metric: rho entries must be finite and >= 0");
      }
      const double gap = std::abs(v - rho[j][i]);
      if (gap > 1e-12 * std::max(1.0, std::abs(v))) {
        throw std::invalid_argument("metric: rho must be symmetric");
      }
    }
    if (rho[i][i] != 0.0) {
      throw std::invalid_argument("metric: rho must vanish on the diagonal");
    }
  }
  if (std::isnan(r_bound) || std::isinf(r_bound) || r_bound <= 0.0) {
    throw std::invalid_argument("metric: r_bound must be positive and finite");
  }
}

nlohmann::json MetricSpec::ToJson() const {
  nlohmann::json j;
  j["alphabet"] = alphabet;
  j["rho"] = rho;
  j["r_bound"] = r_bound;
  return j;
}

MetricSpec MetricSpec::FromJson(const nlohmann::json& j) {
  for (const auto& item : j.items()) {
    const std::string& key = item.key();
    if (key != "alphabet" && key != "rho" && key != "r_bound") {
      throw std::invalid_argument("metric: unknown field '" + key + "'");
    }
  }
  MetricSpec spec;
  spec.alphabet = j.at("alphabet").get<std::vector<std::string>>();
  spec.rho = j.at("rho").get<std::vector<std::vector<double>>>();
  spec.r_bound = j.at("r_bound").get<double>();
  spec.Validate();
  return spec;
}

nlohmann::json AuditWitness::ToJson() const {
  nlohmann::json j;
  j["dataset_a"] = dataset_a;
  j["dataset_b"] = dataset_b;
  j["outcome_set"] = outcome_set;
  j["value"] = JsonNumber(value);
  return j;
}

nlohmann::json PrivacyVerdict::ToJson() const {
  nlohmann::json j;
  j["definition"] = PrivacyDefinitionName(definition);
  j["holds"] = holds;
  j["tight"] = JsonNumber(tight);
  j["requested"] = JsonNumber(requested);
  j["params"] = params;
  if (witness.has_value()) {
    j["witness"] = witness->ToJson();
  }
  return j;
}

namespace {

// Scans shared by the tight-value helpers and the audits.

WitnessTrack ScanPureDp(const DiscreteChannel& channel, double* tight) {
  WitnessTrack track;
  double best = 0.0;
  for (const auto& [i, j] : channel.NeighborPairs()) {
    const LogRatioScan scan = MaxAbsLogRatio(channel.row(i), channel.row(j));
    if (scan.value > best) {
      best = scan.value;
      track.set = true;
      track.a = scan.a_side_larger ? i : j;
      track.b = scan.a_side_larger ? j : i;
      track.outcomes = {scan.outcome};
      track.value = scan.value;
      if (std::isinf(best)) break;
    }
  }
  *tight = best;
  return track;
}

WitnessTrack ScanApproxDp(const DiscreteChannel& channel, double eps,
                          double* tight) {
  WitnessTrack track;
  double best = 0.0;
  auto consider = [&](std::size_t a, std::size_t b) {
    HockeyStick hs = HockeyStickMass(channel.row(a), channel.row(b), eps);
    if (hs.mass > best || !track.set) {
      best = std::max(best, hs.mass);
      track.set = true;
      track.a = a;
      track.b = b;
      track.outcomes = std::move(hs.upper_set);
      track.value = hs.mass;
    }
  };
  for (const auto& [i, j] : channel.NeighborPairs()) {
    consider(i, j);
    consider(j, i);
  }
  *tight = best;
  return track;
}

WitnessTrack ScanTesting(const DiscreteChannel& channel, double eps,
                         double* tight) {
  WitnessTrack track;
  double best = 0.0;
  auto consider = [&](std::size_t a, std::size_t b) {
    const double mass = TestingMass(channel.row(a), channel.row(b), eps);
    if (mass > best || !track.set) {
      best = std::max(best, mass);
      track.set = true;
      track.a = a;
      track.b = b;
      // The attaining event is the same upper set as the hockey-stick form.
      track.outcomes = HockeyStickMass(channel.row(a), channel.row(b), eps)
                           .upper_set;
      track.value = mass;
    }
  };
  for (const auto& [i, j] : channel.NeighborPairs()) {
    consider(i, j);
    consider(j, i);
  }
  *tight = best;
  return track;
}

WitnessTrack ScanFPrivacy(const DiscreteChannel& channel,
                          const FDivergenceSpec& divergence, double* tight) {
  std::vector<FiniteDistribution> rows;
  rows.reserve(channel.dataset_count());
  for (std::size_t d = 0; d < channel.dataset_count(); ++d) {
    rows.push_back(channel.RowDistribution(d));
  }
  WitnessTrack track;
  double best = 0.0;
  auto consider = [&](std::size_t a, std::size_t b) {
    const double v = FDivergence(divergence, rows[a], rows[b]);
    if (v > best || !track.set) {
      best = std::max(best, v);
      track.set = true;
      track.a = a;
      track.b = b;
      track.outcomes.clear();
      track.value = v;
    }
  };
  for (const auto& [i, j] : channel.NeighborPairs()) {
    consider(i, j);
    if (std::isinf(best)) break;
    consider(j, i);
    if (std::isinf(best)) break;
  }
  *tight = best;
  return track;
}

WitnessTrack ScanSmoothDp(const DiscreteChannel& channel,
                          const MetricSpec& metric, double* tight) {
  metric.Validate();
  if (metric.alphabet != channel.input_alphabet()) {
    throw std::invalid_argument(
        "smooth audit: metric alphabet must match the channel input alphabet");
  }
  // The guarantee quantifies over all dataset pairs, but changing one
  // coordinate at a time telescopes the log-ratio while the metric adds
  // exactly, so single-coordinate pairs attain the global extremum.
  WitnessTrack track;
  double best = 0.0;
  for (const auto& [i, j] : channel.NeighborPairs()) {
    const LogRatioScan scan = MaxAbsLogRatio(channel.row(i), channel.row(j));
    if (scan.value == 0.0) continue;
    const auto di = channel.DatasetDigits(i);
    const auto dj = channel.DatasetDigits(j);
    std::size_t pos = 0;
    while (di[pos] == dj[pos]) ++pos;
    const double rho = metric.rho[di[pos]][dj[pos]];
    const double distance = rho / metric.r_bound;
    const double candidate = distance == 0.0 ? kInf : scan.value / distance;
    if (candidate > best) {
      best = candidate;
      track.set = true;
      track.a = scan.a_side_larger ? i : j;
      track.b = scan.a_side_larger ? j : i;
      track.outcomes = {scan.outcome};
      track.value = candidate;
      if (std::isinf(best)) break;
    }
  }
  *tight = best;
  return track;
}

WitnessTrack ScanChtp(const DiscreteChannel& channel, double delta_ch,
                      double* tight) {
  const int k = static_cast<int>(channel.output_size());
  if (k > kChtpMaxOutputs) {
    throw ResourceCapError(
        "chtp audit: output set exceeds the subset-enumeration cap");
  }
  const std::uint32_t full = 1u << k;
  std::vector<double> pa(full, 0.0);
  std::vector<double> qa(full, 0.0);
  WitnessTrack track;
  double best = 0.0;
  for (const auto& [i, j] : channel.NeighborPairs()) {
    const std::vector<double>& p = channel.row(i);
    const std::vector<double>& q = channel.row(j);
    for (std::uint32_t mask = 1; mask < full; ++mask) {
      const int low = std::countr_zero(mask);
      const std::uint32_t prev = mask & (mask - 1);
      pa[mask] = pa[prev] + p[low];
      qa[mask] = qa[prev] + q[low];
    }
    for (std::uint32_t mask = 1; mask < full; ++mask) {
      const double ma = pa[mask];
      const double mb = qa[mask];
      // Admissibility: the conditioning event must carry at least delta_ch
      // mass under both rows, and strictly positive mass so the conditionals
      // exist.
      if (ma <= 0.0 || mb <= 0.0 || std::min(ma, mb) < delta_ch) continue;
      long double acc = 0.0L;
      for (std::uint32_t rest = mask; rest != 0; rest &= rest - 1) {
        const int t = std::countr_zero(rest);
        acc += std::fabs(static_cast<long double>(p[t]) / ma -
                         static_cast<long double>(q[t]) / mb);
      }
      const double tv = static_cast<double>(0.5L * acc);
      if (tv > best || !track.set) {
        best = std::max(best, tv);
        track.set = true;
        track.a = i;
        track.b = j;
        track.outcomes.clear();
        for (std::uint32_t rest = mask; rest != 0; rest &= rest - 1) {
          track.outcomes.push_back(
              static_cast<std::size_t>(std::countr_zero(rest)));
        }
        track.value = tv;
      }
    }
  }
  *tight = best;
  return track;
}

}  // namespace

double TightPureDpEpsilon(const DiscreteChannel& channel) {
  double tight = 0.0;
  ScanPureDp(channel, &tight);
  return tight;
}

double TightApproxDpDelta(const DiscreteChannel& channel, double eps) {
  ValidateEps(eps, "eps");
  double tight = 0.0;
  ScanApproxDp(channel, eps, &tight);
  return tight;
}

double TightTestingDelta(const DiscreteChannel& channel, double eps) {
  ValidateEps(eps, "eps");
  double tight = 0.0;
  ScanTesting(channel, eps, &tight);
  return tight;
}

double TightFPrivacyBound(const DiscreteChannel& channel,
                          const FDivergenceSpec& divergence) {
  double tight = 0.0;
  ScanFPrivacy(channel, divergence, &tight);
  return tight;
}

double TightSmoothDpEpsilon(const DiscreteChannel& channel,
                            const MetricSpec& metric) {
  double tight = 0.0;
  ScanSmoothDp(channel, metric, &tight);
  return tight;
}

double TightChtpEpsilon(const DiscreteChannel& channel, double delta_ch) {
  ValidateProbability(delta_ch, "delta_ch");
  double tight = 0.0;
  ScanChtp(channel, delta_ch, &tight);
  return tight;
}

PrivacyVerdict AuditPureDp(const DiscreteChannel& channel, double eps) {
  ValidateEps(eps, "eps");
  double tight = 0.0;
  WitnessTrack track = ScanPureDp(channel, &tight);
  nlohmann::json params;
  params["eps"] = JsonNumber(eps);
  return MakeVerdict(PrivacyDefinition::kPureDp, tight, eps, std::move(params),
                     channel, track);
}

PrivacyVerdict AuditApproxDp(const DiscreteChannel& channel, double eps,
                             double delta) {
  ValidateEps(eps, "eps");
  ValidateProbability(delta, "delta");
  double tight = 0.0;
  WitnessTrack track = ScanApproxDp(channel, eps, &tight);
  nlohmann::json params;
  params["eps"] = JsonNumber(eps);
  params["delta"] = delta;
  return MakeVerdict(PrivacyDefinition::kApproxDp, tight, delta,
                     std::move(params), channel, track);
}

PrivacyVerdict AuditTestingBound(const DiscreteChannel& channel, double eps,
                                 double delta) {
  ValidateEps(eps, "eps");
  ValidateProbability(delta, "delta");
  double tight = 0.0;
  WitnessTrack track = ScanTesting(channel, eps, &tight);
  nlohmann::json params;
  params["eps"] = JsonNumber(eps);
  params["delta"] = delta;
  return MakeVerdict(PrivacyDefinition::kTesting, tight, delta,
                     std::move(params), channel, track);
}

PrivacyVerdict AuditSmoothDp(const DiscreteChannel& channel,
                             const MetricSpec& metric, double eps) {
  ValidateEps(eps, "eps");
  double tight = 0.0;
  WitnessTrack track = ScanSmoothDp(channel, metric, &tight);
  nlohmann::json params;
  params["eps"] = JsonNumber(eps);
  params["metric"] = metric.ToJson();
  return MakeVerdict(PrivacyDefinition::kSmoothDp, tight, eps,
                     std::move(params), channel, track);
}

PrivacyVerdict AuditFPrivacy(const DiscreteChannel& channel,
                             const FDivergenceSpec& divergence, double bound) {
  if (std::isnan(bound) || bound < 0.0) {
    throw std::invalid_argument("bound must be >= 0");
  }
  double tight = 0.0;
  WitnessTrack track = ScanFPrivacy(channel, divergence, &tight);
  nlohmann::json params;
  params["divergence"] = divergence.name();
  params["bound"] = JsonNumber(bound);
  return MakeVerdict(PrivacyDefinition::kFDivergence, tight, bound,
                     std::move(params), channel, track);
}

PrivacyVerdict AuditChtp(const DiscreteChannel& channel, double eps_ch,
                         double delta_ch) {
  ValidateEps(eps_ch, "eps_ch");
  ValidateProbability(delta_ch, "delta_ch");
  double tight = 0.0;
  WitnessTrack track = ScanChtp(channel, delta_ch, &tight);
  nlohmann::json params;
  params["eps_ch"] = JsonNumber(eps_ch);
  params["delta_ch"] = delta_ch;
  return MakeVerdict(PrivacyDefinition::kChtp, tight, eps_ch,
                     std::move(params), channel, track);
}

ChtpParams ChtpParamsFromDp(double eps, double delta) {
  ValidateEps(eps, "eps");
  ValidateProbability(delta, "delta");
  if (eps == 0.0) {
    if (delta > 0.0) {
      throw std::invalid_argument(
          "eps = 0 with delta > 0 has no conditional-test image");
    }
    return {0.0, 0.0};
  }
  ChtpParams out;
  // (1 + e^{-eps}) * (1 - e^{-2 eps}); exceeds 1 for mid-range eps, which is
  // a vacuous but still correct guarantee.
  out.eps_ch = (1.0 + std::exp(-eps)) * (-std::expm1(-2.0 * eps));
  const double denom = std::exp(eps) * std::expm1(eps);  // e^{2eps} - e^eps
  out.delta_ch = std::isinf(denom) ? 0.0 : delta / denom;
  return out;
}

DpParams DpParamsFromChtp(double eps_ch, double delta_ch) {
  if (std::isnan(eps_ch) || eps_ch < 0.0 || eps_ch >= 1.0) {
    throw std::invalid_argument("eps_ch must be in [0, 1) for the converse map");
  }
  if (std::isnan(delta_ch) || delta_ch < 0.0) {
    throw std::invalid_argument("delta_ch must be >= 0");
  }
  DpParams out;
  out.eps = 2.0 * (std::log1p(eps_ch) - std::log1p(-eps_ch));
  out.delta = delta_ch * (1.0 + eps_ch) / (1.0 - eps_ch);
  return out;
}

nlohmann::json ChtpConverseWitness::ToJson() const {
  nlohmann::json j;
  j["found"] = found;
  if (!found) return j;
  j["dataset_a"] = dataset_a;
  j["dataset_b"] = dataset_b;
  j["upper_set"] = upper_set;
  j["hockey_stick"] = hockey_stick;
  j["eps_ch"] = eps_ch;
  j["delta_ch"] = delta_ch;
  j["error_sum"] = error_sum;
  j["mass_a"] = mass_a;
  j["mass_b"] = mass_b;
  return j;
}

ChtpConverseWitness FindChtpConverseWitness(const DiscreteChannel& channel,
                                            double eps, double delta) {
  ValidateEps(eps, "eps");
  if (std::isinf(eps)) {
    throw std::invalid_argument("converse witness needs finite eps");
  }
  ValidateProbability(delta, "delta");

  double hs_max = 0.0;
  WitnessTrack track = ScanApproxDp(channel, eps, &hs_max);
  ChtpConverseWitness w;
  if (!track.set || hs_max <= delta) {
    return w;  // the channel satisfies (eps, delta)-DP
  }

  const std::vector<double>& p = channel.row(track.a);
  const std::vector<double>& q = channel.row(track.b);
  std::vector<bool> in_upper(p.size(), false);
  for (std::size_t t : track.outcomes) in_upper[t] = true;

  long double ub_a = 0.0L, ub_b = 0.0L, lo_a = 0.0L, lo_b = 0.0L;
  for (std::size_t t = 0; t < p.size(); ++t) {
    if (in_upper[t]) {
      ub_a += p[t];
      ub_b += q[t];
    } else {
      lo_a += p[t];
      lo_b += q[t];
    }
  }
  // A violating upper set has positive mass under the first row, and its
  // complement keeps positive mass under the second row; degenerate numbers
  // here mean the violation was spurious.
  if (!(ub_a > 0.0L) || !(lo_b > 0.0L)) return w;

  // Randomized conditioning event: keep the upper set thinned by t_b under
  // consideration together with the complement thinned by e^{-eps/2} t_c.
  // The thinning factors equalize the two sides so the conditional test
  // error collapses below 1 - tanh(eps/4) exactly when the hockey-stick mass
  // exceeds delta.
  const long double t_b = std::min(1.0L, lo_b / ub_a);
  const long double t_c = std::min(1.0L, ub_a / lo_b);
  const long double shrink = std::exp(-static_cast<long double>(eps) / 2.0L);

  const long double upper_a = t_b * ub_a;
  const long double upper_b = t_b * ub_b;
  const long double comp_a = shrink * t_c * lo_a;
  const long double comp_b = shrink * t_c * lo_b;
  const long double mass_a = upper_a + comp_a;
  const long double mass_b = upper_b + comp_b;
  if (!(mass_a > 0.0L) || !(mass_b > 0.0L)) return w;

  const long double error_sum = comp_a / mass_a + upper_b / mass_b;
  const double eps_ch = std::tanh(eps / 4.0);
  const double delta_ch = delta * static_cast<double>(shrink);

  // Re-verify the strict inequalities before vouching for the witness.
  if (!(static_cast<double>(error_sum) < 1.0 - eps_ch)) return w;
  if (!(static_cast<double>(mass_a) > delta_ch)) return w;
  if (!(static_cast<double>(mass_b) > delta_ch)) return w;

  w.found = true;
  w.dataset_a = channel.DatasetKey(track.a);
  w.dataset_b = channel.DatasetKey(track.b);
  for (std::size_t t : track.outcomes) {
    w.upper_set.push_back(channel.output_set()[t]);
  }
  w.hockey_stick = hs_max;
  w.eps_ch = eps_ch;
  w.delta_ch = delta_ch;
  w.error_sum = static_cast<double>(error_sum);
  w.mass_a = static_cast<double>(mass_a);
  w.mass_b = static_cast<double>(mass_b);
  return w;
}

nlohmann::json InformationProcessingReport::ToJson() const {
  nlohmann::json j;
  j["pure_before"] = JsonNumber(pure_before);
  j["pure_after"] = JsonNumber(pure_after);
  j["tv_before"] = JsonNumber(tv_before);
  j["tv_after"] = JsonNumber(tv_after);
  j["kl_before"] = JsonNumber(kl_before);
  j["kl_after"] = JsonNumber(kl_after);
  j["holds"] = holds;
  return j;
}

InformationProcessingReport CheckInformationProcessing(
    const DiscreteChannel& channel, const DiscreteChannel& post) {
  const DiscreteChannel processed = ComposeChannels(post, channel);
  InformationProcessingReport report;
  report.pure_before = TightPureDpEpsilon(channel);
  report.pure_after = TightPureDpEpsilon(processed);
  const FDivergenceSpec tv = FDivergenceSpec::TotalVariation();
  const FDivergenceSpec kl = FDivergenceSpec::KullbackLeibler();
  report.tv_before = TightFPrivacyBound(channel, tv);
  report.tv_after = TightFPrivacyBound(processed, tv);
  report.kl_before = TightFPrivacyBound(channel, kl);
  report.kl_after = TightFPrivacyBound(processed, kl);
  report.holds = report.pure_after <= report.pure_before + kVerdictSlack &&
                 report.tv_after <= report.tv_before + kVerdictSlack &&
                 report.kl_after <= report.kl_before + kVerdictSlack;
  return report;
}

double GaussianDeltaProfile(double sensitivity, double sigma, double eps) {
  if (std::isnan(sensitivity) || sensitivity <= 0.0) {
    throw std::invalid_argument("sensitivity must be positive");
  }
  if (std::isnan(sigma) || sigma <= 0.0) {
    throw std::invalid_argument("sigma must be positive");
  }
  ValidateEps(eps, "eps");
  const auto phi = [](double z) {
    return 0.5 * std::erfc(-z / std::sqrt(2.0));
  };
  const double a = sensitivity / (2.0 * sigma);
  const double b = eps * sigma / sensitivity;
  const double delta = phi(a - b) - std::exp(eps) * phi(-a - b);
  return std::clamp(delta, 0.0, 1.0);
}

}  // namespace privkit
