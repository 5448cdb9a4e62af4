// Copyright 2026 The Privkit Authors. All rights reserved.
// Use of this source code is governed by an Apache-style license that can be
// found in the LICENSE file.

#include "privkit/bounds.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "privkit/audit.h"
#include "privkit/divergence.h"
#include "privkit/errors.h"
#include "privkit/jsonio.h"

namespace privkit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void RequirePositive(double v, const char* what) {
  if (std::isnan(v) || std::isinf(v) || v <= 0.0) {
    throw std::invalid_argument(std::string(what) + " must be positive and finite");
  }
}

void RequireSampleSize(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("n must be at least 1");
}

// Moment orders are allowed to be +infinity (bounded support); 1/k is then 0.
double InverseMoment(double k_moments, double min_k) {
  if (std::isnan(k_moments) || k_moments < min_k) {
    throw std::invalid_argument("moment order k is below the supported range");
  }
  return std::isinf(k_moments) ? 0.0 : 1.0 / k_moments;
}

std::string FormatAtom(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return std::string(buf);
}

double SquaredDistance(const std::vector<double>& a,
                       const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

double MinPairwiseDistance(const std::vector<std::vector<double>>& pts) {
  double best = kInf;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      best = std::min(best, std::sqrt(SquaredDistance(pts[i], pts[j])));
    }
  }
  return best;
}

}  // namespace

nlohmann::json ContractionBound::ToJson() const {
  nlohmann::json j;
  j["value"] = JsonNumber(value);
  j["linear_term"] = JsonNumber(linear_term);
  j["product_term_skipped"] = product_term_skipped;
  if (!product_term_skipped) j["product_term"] = product_term;
  return j;
}

ContractionBound ContractionTvBound(const FiniteDistribution& p0,
                                    const FiniteDistribution& p1,
                                    std::int64_t n, double eps,
                                    std::size_t cap) {
  RequireSampleSize(n);
  if (std::isnan(eps) || eps < 0.0) {
    throw std::invalid_argument("eps must be >= 0");
  }
  if (!p0.SameOutcomes(p1)) {
    throw std::invalid_argument("contraction: distributions must share outcomes");
  }
  ContractionBound out;
  out.linear_term = 2.0 * static_cast<double>(n) * eps * TvDistance(p0, p1);
  try {
    const int ni = static_cast<int>(n);
    const FiniteDistribution prod0 = IidProductDistribution(p0, ni, cap);
    const FiniteDistribution prod1 = IidProductDistribution(p1, ni, cap);
    out.product_term = TvDistance(prod0, prod1);
  } catch (const ResourceCapError&) {
    out.product_term_skipped = true;
  }
  out.value = out.product_term_skipped
                  ? out.linear_term
                  : std::min(out.linear_term, out.product_term);
  return out;
}

double ContractionLinearTerm(const std::vector<FiniteDistribution>& components0,
                             const std::vector<FiniteDistribution>& components1,
                             double eps) {
  if (components0.size() != components1.size()) {
    throw std::invalid_argument("contraction: component lists differ in length");
  }
  if (std::isnan(eps) || eps < 0.0) {
    throw std::invalid_argument("eps must be >= 0");
  }
  long double sum = 0.0L;
  for (std::size_t i = 0; i < components0.size(); ++i) {
    sum += TvDistance(components0[i], components1[i]);
  }
  return 2.0 * eps * static_cast<double>(sum);
}

nlohmann::json ContractionReport::ToJson() const {
  nlohmann::json j;
  j["eps_tv"] = JsonNumber(eps_tv);
  j["marginal_tv"] = marginal_tv;
  j["bound"] = bound.ToJson();
  j["holds"] = holds;
  return j;
}

ContractionReport VerifyContraction(const DiscreteChannel& channel,
                                    const FiniteDistribution& p0,
                                    const FiniteDistribution& p1,
                                    std::size_t cap) {
  if (!p0.SameOutcomes(p1) || p0.outcomes() != channel.input_alphabet()) {
    throw std::invalid_argument(
        "contraction: distributions must live on the channel input alphabet");
  }
  ContractionReport report;
  report.eps_tv =
      TightFPrivacyBound(channel, FDivergenceSpec::TotalVariation());
  const FiniteDistribution m0 =
      ChannelMarginal(channel, IidProductDistribution(p0, channel.n(), cap));
  const FiniteDistribution m1 =
      ChannelMarginal(channel, IidProductDistribution(p1, channel.n(), cap));
  report.marginal_tv = TvDistance(m0, m1);
  report.bound = ContractionTvBound(p0, p1, channel.n(), report.eps_tv, cap);
  report.holds = report.marginal_tv <= report.bound.value + kExactCheckSlack;
  return report;
}

TwoPointConstruction TwoPointMeanConstruction(double r, double k_moments,
                                              double delta_mass) {
  RequirePositive(r, "r");
  const double inv_k = InverseMoment(k_moments, 1.0 + 1e-12);
  if (std::isnan(delta_mass) || delta_mass <= 0.0 || delta_mass > 1.0) {
    throw std::invalid_argument("delta_mass must be in (0, 1]");
  }
  const double magnitude = r * std::pow(delta_mass, -inv_k);
  const double theta = r * std::pow(delta_mass, 1.0 - inv_k);
  const std::vector<std::string> labels = {FormatAtom(-magnitude),
                                           FormatAtom(0.0),
                                           FormatAtom(magnitude)};
  const std::vector<double> values = {-magnitude, 0.0, magnitude};
  return TwoPointConstruction{
      magnitude,
      -theta,
      theta,
      delta_mass,
      labels,
      values,
      FiniteDistribution(labels, {delta_mass, 1.0 - delta_mass, 0.0}),
      FiniteDistribution(labels, {0.0, 1.0 - delta_mass, delta_mass})};
}

nlohmann::json TvMeanBound::ToJson() const {
  nlohmann::json j;
  j["value"] = value;
  j["delta_star"] = delta_star;
  j["clamped"] = clamped;
  return j;
}

TvMeanBound TvMeanLowerBound(double r, double k_moments, std::int64_t n,
                             double eps) {
  RequirePositive(r, "r");
  const double inv_k = InverseMoment(k_moments, 2.0);
  RequireSampleSize(n);
  if (std::isnan(eps) || eps < 0.0 || std::isinf(eps)) {
    throw std::invalid_argument("eps must be finite and >= 0");
  }
  TvMeanBound out;
  const double raw =
      eps == 0.0 ? kInf : 1.0 / (4.0 * static_cast<double>(n) * eps);
  out.clamped = raw > 1.0;
  out.delta_star = out.clamped ? 1.0 : raw;
  out.value = (r * r / 4.0) * std::pow(out.delta_star, 2.0 - 2.0 * inv_k);
  return out;
}

double UniformSupportLowerBound(double t, std::int64_t n, double eps) {
  RequirePositive(t, "t");
  RequireSampleSize(n);
  RequirePositive(eps, "eps");
  return t / (32.0 * static_cast<double>(n) * eps);
}

nlohmann::json EstimationChainReport::ToJson() const {
  nlohmann::json j;
  j["eps_requested"] = eps_requested;
  j["eps_tight"] = eps_tight;
  j["delta_star"] = delta_star;
  j["mean_gap"] = mean_gap;
  j["marginal_tv"] = marginal_tv;
  j["tv_bound"] = tv_bound;
  j["le_cam_term"] = le_cam_term;
  j["contraction_floor"] = contraction_floor;
  j["closed_form"] = closed_form;
  j["holds"] = holds;
  return j;
}

EstimationChainReport EstimationTestingChain(const DiscreteChannel& channel,
                                             double r, double k_moments,
                                             double eps, std::size_t cap) {
  const TvMeanBound closed = TvMeanLowerBound(r, k_moments, channel.n(), eps);
  const TwoPointConstruction tp =
      TwoPointMeanConstruction(r, k_moments, closed.delta_star);
  if (channel.input_alphabet() != tp.atom_labels) {
    throw std::invalid_argument(
        "chain: channel input alphabet must be the two-point atoms at "
        "delta_star");
  }
  EstimationChainReport report;
  report.eps_requested = eps;
  report.eps_tight =
      TightFPrivacyBound(channel, FDivergenceSpec::TotalVariation());
  if (report.eps_tight > eps + kVerdictSlack) {
    throw std::invalid_argument("chain: channel is not eps-TV private");
  }
  report.delta_star = closed.delta_star;
  report.mean_gap = tp.theta1 - tp.theta0;

  const FiniteDistribution m0 =
      ChannelMarginal(channel, IidProductDistribution(tp.p0, channel.n(), cap));
  const FiniteDistribution m1 =
      ChannelMarginal(channel, IidProductDistribution(tp.p1, channel.n(), cap));
  report.marginal_tv = TvDistance(m0, m1);

  const ContractionBound bound =
      ContractionTvBound(tp.p0, tp.p1, channel.n(), report.eps_tight, cap);
  report.tv_bound = bound.value;

  const double half_gap_sq = (report.mean_gap / 2.0) * (report.mean_gap / 2.0);
  report.le_cam_term = 0.5 * half_gap_sq * (1.0 - report.marginal_tv);
  report.contraction_floor =
      0.5 * half_gap_sq * std::max(0.0, 1.0 - report.tv_bound);
  report.closed_form = closed.value;
  report.holds =
      report.le_cam_term >= report.contraction_floor - kExactCheckSlack &&
      report.contraction_floor >= report.closed_form - kExactCheckSlack;
  return report;
}

nlohmann::json PackingSet::ToJson() const {
  nlohmann::json j;
  j["d"] = d;
  j["count"] = points.size();
  j["separation"] = separation;
  j["greedy_trials"] = greedy_trials;
  j["probe_insertions"] = probe_insertions;
  j["points"] = points;
  return j;
}

namespace {

std::vector<double> UniformInBall(int d, RngStream* rng) {
  std::vector<double> v(d);
  double norm_sq = 0.0;
  for (int i = 0; i < d; ++i) {
    v[i] = rng->NextGaussian();
    norm_sq += v[i] * v[i];
  }
  const double norm = std::sqrt(norm_sq);
  const double radius =
      std::pow(rng->NextUniform(), 1.0 / static_cast<double>(d));
  const double scale = norm > 0.0 ? radius / norm : 0.0;
  for (double& x : v) x *= scale;
  return v;
}

bool SeparatedFromAll(const std::vector<double>& candidate,
                      const std::vector<std::vector<double>>& points,
                      double min_dist) {
  const double min_sq = min_dist * min_dist;
  for (const auto& p : points) {
    if (SquaredDistance(candidate, p) < min_sq) return false;
  }
  return true;
}

}  // namespace

PackingSet GreedyPacking(int d, RngStream* rng) {
  if (d < 1) throw std::invalid_argument("packing: d must be at least 1");
  if (d > 8) {
    throw ResourceCapError("packing: dimension exceeds the supported cap of 8");
  }
  if (rng == nullptr) throw std::invalid_argument("packing: rng is required");

  PackingSet set;
  set.d = d;
  const std::size_t budget = 200u * (std::size_t{1} << d);
  for (std::size_t trial = 0; trial < budget; ++trial) {
    std::vector<double> candidate = UniformInBall(d, rng);
    if (SeparatedFromAll(candidate, set.points, 0.5)) {
      set.points.push_back(std::move(candidate));
    }
  }
  set.greedy_trials = budget;

  // Certify maximality: every probe must be covered at radius 1/2; an
  // uncovered probe is a legal center, so insert it rather than fail.
  constexpr std::size_t kProbes = 100000;
  for (std::size_t i = 0; i < kProbes; ++i) {
    std::vector<double> probe = UniformInBall(d, rng);
    if (SeparatedFromAll(probe, set.points, 0.5)) {
      set.points.push_back(std::move(probe));
      ++set.probe_insertions;
    }
  }
  set.separation = MinPairwiseDistance(set.points);
  return set;
}

double MixtureConstruction::RadialMoment(std::size_t which,
                                         double k_moments) const {
  const std::vector<double>& s = support_points.at(which);
  const double norm = std::sqrt(SquaredDistance(s, std::vector<double>(s.size(), 0.0)));
  // For k = infinity the moment condition is an almost-sure bound; report the
  // essential supremum of ||X|| instead.
  if (std::isinf(k_moments)) return norm;
  return p * std::pow(norm, k_moments);
}

nlohmann::json MixtureConstruction::ToJson() const {
  nlohmann::json j;
  j["p"] = p;
  j["scale"] = scale;
  j["separation"] = separation;
  j["support_points"] = support_points;
  j["thetas"] = thetas;
  return j;
}

MixtureConstruction MakeMixtureConstruction(const PackingSet& packing, double r,
                                            double k_moments, double p) {
  RequirePositive(r, "r");
  const double inv_k = InverseMoment(k_moments, 1.0 + 1e-12);
  if (std::isnan(p) || p <= 0.0 || p > 1.0) {
    throw std::invalid_argument("mixture: p must be in (0, 1]");
  }
  MixtureConstruction mc;
  mc.p = p;
  mc.scale = r * std::pow(p, -inv_k);
  for (const auto& v : packing.points) {
    std::vector<double> s(v.size());
    std::vector<double> theta(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
      s[i] = mc.scale * v[i];
      theta[i] = p * s[i];
    }
    mc.support_points.push_back(std::move(s));
    mc.thetas.push_back(std::move(theta));
  }
  mc.separation = MinPairwiseDistance(mc.thetas);
  return mc;
}

double PackingLowerBound(int m, int np_ceil, double eps, double delta) {
  if (m < 2) throw std::invalid_argument("packing bound: m must be at least 2");
  if (np_ceil < 0) {
    throw std::invalid_argument("packing bound: np_ceil must be >= 0");
  }
  if (std::isnan(eps) || eps < 0.0) {
    throw std::invalid_argument("eps must be >= 0");
  }
  if (std::isnan(delta) || delta < 0.0 || delta > 1.0) {
    throw std::invalid_argument("delta must be in [0, 1]");
  }
  if (eps == 0.0 && delta > 0.0) {
    throw std::invalid_argument(
        "packing bound: the geometric factor degenerates at eps = 0 with "
        "delta > 0");
  }
  const double ek = std::exp(-eps * static_cast<double>(np_ceil));
  double geom = 0.0;
  if (np_ceil > 0) {
    geom = eps == 0.0 ? static_cast<double>(np_ceil)
                      : std::expm1(-eps * static_cast<double>(np_ceil)) /
                            std::expm1(-eps);
  }
  const double others = static_cast<double>(m - 1);
  const double value =
      others * (0.5 * ek - delta * geom) / (1.0 + others * ek);
  return std::max(0.0, value);
}

nlohmann::json DpMeanBound::ToJson() const {
  nlohmann::json j;
  j["value"] = value;
  j["p"] = p;
  j["delta_term_dropped"] = delta_term_dropped;
  j["p_clamped"] = p_clamped;
  j["used_two_point_route"] = used_two_point_route;
  j["asymptotic"] = asymptotic;
  return j;
}

DpMeanBound DpMeanLowerBound(double r, double k_moments, int d, std::int64_t n,
                             double eps, double delta) {
  RequirePositive(r, "r");
  const double inv_k = InverseMoment(k_moments, 2.0);
  if (d < 1) throw std::invalid_argument("d must be at least 1");
  RequireSampleSize(n);
  RequirePositive(eps, "eps");
  if (std::isnan(delta) || delta < 0.0 || delta > 1.0) {
    throw std::invalid_argument("delta must be in [0, 1]");
  }

  DpMeanBound out;
  const double nd = static_cast<double>(n);
  // Reported rate: r^2/n + r^2 min(1, ((d^2 ^ log^2(1/delta))/(n eps)^2)^{(k-1)/k}).
  {
    const double log_inv_delta = delta == 0.0 ? kInf : std::log(1.0 / delta);
    const double squeeze = std::min(static_cast<double>(d) * d,
                                    log_inv_delta * log_inv_delta);
    const double ratio = squeeze / (nd * nd * eps * eps);
    const double exponent = 1.0 - inv_k;  // (k-1)/k
    out.asymptotic =
        r * r / nd + r * r * std::min(1.0, std::pow(ratio, exponent));
  }

  if (d == 1) {
    const TvMeanBound tv = TvMeanLowerBound(r, k_moments, n, eps);
    out.value = tv.value;
    out.p = tv.delta_star;
    out.p_clamped = tv.clamped;
    out.used_two_point_route = true;
    return out;
  }

  const double d_term = static_cast<double>(d) / 2.0 - eps;
  double chosen = d_term;
  if (delta > 0.0) {
    const double arg = -std::expm1(-eps) / (4.0 * delta * std::exp(eps));
    const double log_term = std::log(arg);
    if (log_term <= 0.0) {
      out.delta_term_dropped = true;
    } else {
      chosen = std::min(d_term, log_term);
    }
  }
  const double p_raw = chosen / (nd * eps);
  out.p = std::clamp(p_raw, 0.0, 1.0);
  out.p_clamped = p_raw != out.p;
  out.value = (r * r / 32.0) * std::pow(out.p, 2.0 - 2.0 * inv_k);
  return out;
}

nlohmann::json MassEverywhereReport::ToJson() const {
  nlohmann::json j;
  j["eps"] = eps;
  j["delta_used"] = delta_used;
  j["p"] = p;
  j["k_ceil"] = k_ceil;
  j["subsets_checked"] = subsets_checked;
  j["min_slack"] = min_slack;
  j["holds"] = holds;
  return j;
}

MassEverywhereReport VerifyMassEverywhere(const DiscreteChannel& channel,
                                          double eps, double p,
                                          std::size_t base_atom,
                                          std::size_t atom_v,
                                          std::size_t atom_vp,
                                          std::size_t cap) {
  if (channel.n() > 4) {
    throw std::invalid_argument(
        "mass check: exact verification is limited to n <= 4");
  }
  const std::size_t alpha = channel.input_alphabet().size();
  if (base_atom >= alpha || atom_v >= alpha || atom_vp >= alpha) {
    throw std::invalid_argument("mass check: atom index out of range");
  }
  if (base_atom == atom_v || base_atom == atom_vp || atom_v == atom_vp) {
    throw std::invalid_argument("mass check: atoms must be distinct");
  }
  if (std::isnan(eps) || eps < 0.0 || std::isinf(eps)) {
    throw std::invalid_argument("eps must be finite and >= 0");
  }
  if (std::isnan(p) || p < 0.0 || p > 1.0) {
    throw std::invalid_argument("p must be in [0, 1]");
  }
  const int k = static_cast<int>(channel.output_size());
  if (k > kChtpMaxOutputs) {
    throw ResourceCapError(
        "mass check: output set exceeds the subset-enumeration cap");
  }

  MassEverywhereReport report;
  report.eps = eps;
  report.p = p;
  report.delta_used = TightApproxDpDelta(channel, eps);
  report.k_ceil =
      static_cast<int>(std::ceil(static_cast<double>(channel.n()) * p));

  auto mixture = [&](std::size_t atom) {
    std::vector<double> probs(alpha, 0.0);
    probs[base_atom] += 1.0 - p;
    probs[atom] += p;
    return FiniteDistribution(channel.input_alphabet(), probs);
  };
  const FiniteDistribution marg_v = ChannelMarginal(
      channel, IidProductDistribution(mixture(atom_v), channel.n(), cap));
  const FiniteDistribution marg_vp = ChannelMarginal(
      channel, IidProductDistribution(mixture(atom_vp), channel.n(), cap));

  const double ek = std::exp(-eps * report.k_ceil);
  double geom = 0.0;
  for (int i = 0; i < report.k_ceil; ++i) geom += std::exp(-eps * i);

  const std::uint32_t full = 1u << k;
  std::vector<double> ma(full, 0.0);
  std::vector<double> mb(full, 0.0);
  for (std::uint32_t mask = 1; mask < full; ++mask) {
    const int low = std::countr_zero(mask);
    const std::uint32_t prev = mask & (mask - 1);
    ma[mask] = ma[prev] + marg_v.prob(low);
    mb[mask] = mb[prev] + marg_vp.prob(low);
  }

  report.min_slack = kInf;
  for (std::uint32_t mask = 0; mask < full; ++mask) {
    const double lhs_fwd = ma[mask] - (ek * (mb[mask] - 0.5) - report.delta_used * geom);
    const double lhs_rev = mb[mask] - (ek * (ma[mask] - 0.5) - report.delta_used * geom);
    report.min_slack = std::min({report.min_slack, lhs_fwd, lhs_rev});
  }
  report.subsets_checked = full;
  report.holds = report.min_slack >= -kExactCheckSlack;
  return report;
}

double DensityLowerRate(int d, std::int64_t n, double eps) {
  if (d < 1) throw std::invalid_argument("d must be at least 1");
  RequireSampleSize(n);
  if (std::isnan(eps) || eps <= 0.0) {
    throw std::invalid_argument("eps must be positive (or +inf)");
  }
  const double nd = static_cast<double>(n);
  const double statistical = std::pow(nd, -2.0 / (2.0 + d));
  const double privacy = std::pow(nd * eps, -2.0 / (1.0 + d));
  return statistical + privacy;
}

}  // namespace privkit
