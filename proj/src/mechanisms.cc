// Copyright 2026 The Privkit Authors. All rights reserved.
// Use of this source code is governed by an Apache-style license that can be
// found in the LICENSE file.

#include "privkit/mechanisms.h"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace privkit {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double SquaredDistance(const double* a, const double* b, int d) {
  double sum = 0.0;
  for (int c = 0; c < d; ++c) {
    double diff = a[c] - b[c];
    sum += diff * diff;
  }
  return sum;
}

void RequireSample(const std::vector<std::vector<double>>& sample,
                   const MechanismSpec& spec) {
  if (sample.size() != static_cast<std::size_t>(spec.n)) {
    throw std::invalid_argument("sample size differs from spec.n");
  }
  for (const std::vector<double>& point : sample) {
    if (point.size() != static_cast<std::size_t>(spec.d)) {
      throw std::invalid_argument("sample point dimension differs from spec.d");
    }
  }
}

std::vector<double> Flatten(const std::vector<std::vector<double>>& sample,
                            const MechanismSpec& spec) {
  RequireSample(sample, spec);
  std::vector<double> flat;
  flat.reserve(sample.size() * static_cast<std::size_t>(spec.d));
  for (const std::vector<double>& point : sample) {
    flat.insert(flat.end(), point.begin(), point.end());
  }
  return flat;
}

std::vector<double> TruncatedMeanPair(
    const std::vector<std::vector<double>>& sample, const MechanismSpec& spec) {
  return TruncatedMean(Flatten(sample, spec), spec, nullptr,
                       NoiseMode::kDiagnosticNoNoise);
}

}  // namespace

const char* MechanismVariantName(MechanismVariant variant) {
  switch (variant) {
    case MechanismVariant::kKlGaussian:
      return "kl-gaussian";
    case MechanismVariant::kApproxDpGaussian:
      return "approx-dp-gaussian";
    case MechanismVariant::kSmoothDpLaplace:
      return "smooth-dp-laplace";
  }
  throw std::invalid_argument("unknown mechanism variant");
}

MechanismVariant MechanismVariantFromName(const std::string& name) {
  if (name == "kl-gaussian") return MechanismVariant::kKlGaussian;
  if (name == "approx-dp-gaussian") return MechanismVariant::kApproxDpGaussian;
  if (name == "smooth-dp-laplace") return MechanismVariant::kSmoothDpLaplace;
  throw std::invalid_argument("unknown mechanism variant: " + name);
}

void MechanismSpec::Validate() const {
  if (d < 1) throw std::invalid_argument("mechanism needs d >= 1");
  if (n < 1) throw std::invalid_argument("mechanism needs n >= 1");
  if (!(r > 0.0)) throw std::invalid_argument("mechanism needs r > 0");
  if (!(k_moments > 1.0)) {
    throw std::invalid_argument("mechanism needs k_moments > 1");
  }
  switch (variant) {
    case MechanismVariant::kKlGaussian:
      if (!(eps_kl > 0.0) || !std::isfinite(eps_kl)) {
        throw std::invalid_argument("kl-gaussian needs finite eps_kl > 0");
      }
      break;
    case MechanismVariant::kApproxDpGaussian:
      if (!(eps > 0.0) || !std::isfinite(eps)) {
        throw std::invalid_argument("approx-dp-gaussian needs finite eps > 0");
      }
      if (!(delta > 0.0 && delta < 1.0)) {
        throw std::invalid_argument(
            "approx-dp-gaussian needs delta in (0, 1)");
      }
      break;
    case MechanismVariant::kSmoothDpLaplace:
      if (!(eps > 0.0) || !std::isfinite(eps)) {
        throw std::invalid_argument("smooth-dp-laplace needs finite eps > 0");
      }
      break;
  }
  if (truncation_override && !(*truncation_override > 0.0)) {
    throw std::invalid_argument("truncation override must be positive");
  }
  double t = TruncationRadius();
  if (!(t > 0.0) || !std::isfinite(t)) {
    throw std::invalid_argument("derived truncation radius is not positive");
  }
}

double MechanismSpec::TruncationRadius() const {
  if (truncation_override) return *truncation_override;
  // With every moment bounded the data already live in the radius-r ball and
  // truncation is free; pow(base, 0) handles that limit.
  double inv_2k = std::isinf(k_moments) ? 0.0 : 1.0 / (2.0 * k_moments);
  double nd = static_cast<double>(n);
  switch (variant) {
    case MechanismVariant::kKlGaussian:
      return r * std::pow(nd * nd * eps_kl / d, inv_2k);
    case MechanismVariant::kApproxDpGaussian:
      return r *
             std::pow(nd * nd * eps * eps / (d * std::log(1.0 / delta)),
                      inv_2k);
    case MechanismVariant::kSmoothDpLaplace:
      return r * std::pow(nd * eps / d, 2.0 * inv_2k);
  }
  throw std::invalid_argument("unknown mechanism variant");
}

double MechanismSpec::GaussianVariance() const {
  double t = TruncationRadius();
  double nd = static_cast<double>(n);
  switch (variant) {
    case MechanismVariant::kKlGaussian:
      return 2.0 * t * t / (nd * nd * eps_kl);
    case MechanismVariant::kApproxDpGaussian:
      return 2.0 * t * t * std::log(1.0 / delta) / (nd * nd * eps * eps);
    case MechanismVariant::kSmoothDpLaplace:
      break;
  }
  throw std::invalid_argument("variant has no Gaussian noise");
}

double MechanismSpec::LaplaceScale() const {
  if (variant != MechanismVariant::kSmoothDpLaplace) {
    throw std::invalid_argument("variant has no Laplace noise");
  }
  double t = TruncationRadius();
  // Per-coordinate rate eps * n / (2 T sqrt(d)); the scale is its inverse.
  return 2.0 * t * std::sqrt(static_cast<double>(d)) /
         (eps * static_cast<double>(n));
}

double MechanismSpec::NoiseSecondMoment() const {
  if (variant == MechanismVariant::kSmoothDpLaplace) {
    double b = LaplaceScale();
    return 2.0 * d * b * b;
  }
  return d * GaussianVariance();
}

nlohmann::json MechanismSpec::ToJson() const {
  nlohmann::json j{{"variant", MechanismVariantName(variant)},
                   {"d", d},
                   {"n", n},
                   {"r", r}};
  j["k_moments"] =
      std::isinf(k_moments) ? nlohmann::json("inf") : nlohmann::json(k_moments);
  switch (variant) {
    case MechanismVariant::kKlGaussian:
      j["eps_kl"] = eps_kl;
      break;
    case MechanismVariant::kApproxDpGaussian:
      j["eps"] = eps;
      j["delta"] = delta;
      break;
    case MechanismVariant::kSmoothDpLaplace:
      j["eps"] = eps;
      break;
  }
  if (truncation_override) j["truncation_radius"] = *truncation_override;
  return j;
}

MechanismSpec MechanismSpec::FromJson(const nlohmann::json& j) {
  if (!j.is_object()) {
    throw std::invalid_argument("mechanism spec must be a JSON object");
  }
  static const char* const kKnown[] = {"variant", "d",     "n",
                                       "r",       "k_moments", "eps",
                                       "delta",   "eps_kl",    "truncation_radius"};
  for (const auto& [key, value] : j.items()) {
    (void)value;
    bool known = false;
    for (const char* k : kKnown) known = known || key == k;
    if (!known) {
      throw std::invalid_argument("unknown mechanism spec field: " + key);
    }
  }
  MechanismSpec spec;
  spec.variant = MechanismVariantFromName(j.at("variant").get<std::string>());
  spec.d = j.at("d").get<int>();
  spec.n = j.at("n").get<std::int64_t>();
  spec.r = j.at("r").get<double>();
  const nlohmann::json& k = j.at("k_moments");
  if (k.is_string()) {
    if (k.get<std::string>() != "inf") {
      throw std::invalid_argument("k_moments must be a number or \"inf\"");
    }
    spec.k_moments = kInf;
  } else {
    spec.k_moments = k.get<double>();
  }
  if (j.contains("eps")) spec.eps = j.at("eps").get<double>();
  if (j.contains("delta")) spec.delta = j.at("delta").get<double>();
  if (j.contains("eps_kl")) spec.eps_kl = j.at("eps_kl").get<double>();
  if (j.contains("truncation_radius")) {
    spec.truncation_override = j.at("truncation_radius").get<double>();
  }
  spec.Validate();
  return spec;
}

std::vector<double> TruncateProject(const std::vector<double>& x,
                                    double radius) {
  if (!(radius > 0.0)) {
    throw std::invalid_argument("truncation radius must be positive");
  }
  double norm_sq = 0.0;
  for (double c : x) norm_sq += c * c;
  double norm = std::sqrt(norm_sq);
  if (norm <= radius) return x;
  std::vector<double> projected(x.size());
  double shrink = radius / norm;
  for (std::size_t i = 0; i < x.size(); ++i) projected[i] = x[i] * shrink;
  return projected;
}

std::vector<double> TruncatedMean(const std::vector<double>& flat,
                                  const MechanismSpec& spec, RngStream* rng,
                                  NoiseMode mode) {
  spec.Validate();
  const std::size_t d = static_cast<std::size_t>(spec.d);
  if (flat.size() != d * static_cast<std::size_t>(spec.n)) {
    throw std::invalid_argument("flat sample size differs from n * d");
  }
  if (mode == NoiseMode::kPrivate && rng == nullptr) {
    throw std::invalid_argument("private release needs an rng stream");
  }
  const double radius = spec.TruncationRadius();
  std::vector<long double> acc(d, 0.0L);
  for (std::int64_t i = 0; i < spec.n; ++i) {
    const double* point = flat.data() + static_cast<std::size_t>(i) * d;
    double norm_sq = 0.0;
    for (std::size_t c = 0; c < d; ++c) norm_sq += point[c] * point[c];
    double norm = std::sqrt(norm_sq);
    double shrink = norm > radius ? radius / norm : 1.0;
    for (std::size_t c = 0; c < d; ++c) acc[c] += point[c] * shrink;
  }
  std::vector<double> mean(d);
  for (std::size_t c = 0; c < d; ++c) {
    mean[c] = static_cast<double>(acc[c] / spec.n);
  }
  if (mode == NoiseMode::kDiagnosticNoNoise) return mean;

  if (spec.variant == MechanismVariant::kSmoothDpLaplace) {
    double scale = spec.LaplaceScale();
    for (std::size_t c = 0; c < d; ++c) mean[c] += rng->NextLaplace(scale);
  } else {
    double sigma = std::sqrt(spec.GaussianVariance());
    for (std::size_t c = 0; c < d; ++c) {
      mean[c] += sigma * rng->NextGaussian();
    }
  }
  return mean;
}

std::vector<double> TruncatedMean(
    const std::vector<std::vector<double>>& sample, const MechanismSpec& spec,
    RngStream* rng, NoiseMode mode) {
  return TruncatedMean(Flatten(sample, spec), spec, rng, mode);
}

MeanSensitivityReport MeanSensitivity(
    const std::vector<std::vector<double>>& sample_a,
    const std::vector<std::vector<double>>& sample_b,
    double truncation_radius) {
  if (sample_a.size() != sample_b.size() || sample_a.empty()) {
    throw std::invalid_argument("samples must be non-empty and equal length");
  }
  if (!(truncation_radius > 0.0)) {
    throw std::invalid_argument("truncation radius must be positive");
  }
  const std::size_t n = sample_a.size();
  const std::size_t d = sample_a[0].size();
  long double pairwise = 0.0L;
  std::size_t differing = 0;
  std::vector<long double> mean_diff(d, 0.0L);
  for (std::size_t i = 0; i < n; ++i) {
    if (sample_a[i].size() != d || sample_b[i].size() != d) {
      throw std::invalid_argument("sample points have mixed dimensions");
    }
    std::vector<double> pa = TruncateProject(sample_a[i], truncation_radius);
    std::vector<double> pb = TruncateProject(sample_b[i], truncation_radius);
    for (std::size_t c = 0; c < d; ++c) mean_diff[c] += pa[c] - pb[c];
    double dist =
        std::sqrt(SquaredDistance(sample_a[i].data(), sample_b[i].data(),
                                  static_cast<int>(d)));
    if (dist > 0.0) ++differing;
    pairwise += std::min(dist, 2.0 * truncation_radius);
  }
  MeanSensitivityReport report;
  long double dist_sq = 0.0L;
  for (std::size_t c = 0; c < d; ++c) {
    long double coord = mean_diff[c] / static_cast<long double>(n);
    dist_sq += coord * coord;
  }
  report.distance = std::sqrt(static_cast<double>(dist_sq));
  report.pairwise_bound = static_cast<double>(pairwise / n);
  report.hamming_bound =
      2.0 * truncation_radius * static_cast<double>(differing) / n;
  return report;
}

double TruncatedMeanKlDivergence(const std::vector<std::vector<double>>& a,
                                 const std::vector<std::vector<double>>& b,
                                 const MechanismSpec& spec) {
  if (spec.variant != MechanismVariant::kKlGaussian) {
    throw std::invalid_argument("KL profile applies to the kl-gaussian variant");
  }
  std::vector<double> va = TruncatedMeanPair(a, spec);
  std::vector<double> vb = TruncatedMeanPair(b, spec);
  double dist_sq = SquaredDistance(va.data(), vb.data(), spec.d);
  return dist_sq / (2.0 * spec.GaussianVariance());
}

double SmoothDpLogRatioBound(const std::vector<std::vector<double>>& a,
                             const std::vector<std::vector<double>>& b,
                             const MechanismSpec& spec) {
  if (spec.variant != MechanismVariant::kSmoothDpLaplace) {
    throw std::invalid_argument(
        "log-ratio bound applies to the smooth-dp-laplace variant");
  }
  std::vector<double> va = TruncatedMeanPair(a, spec);
  std::vector<double> vb = TruncatedMeanPair(b, spec);
  double l1 = 0.0;
  for (int c = 0; c < spec.d; ++c) l1 += std::fabs(va[c] - vb[c]);
  return l1 / spec.LaplaceScale();
}

double SampleMetricDistance(const std::vector<std::vector<double>>& a,
                            const std::vector<std::vector<double>>& b,
                            double truncation_radius) {
  if (a.size() != b.size() || a.empty()) {
    throw std::invalid_argument("samples must be non-empty and equal length");
  }
  if (!(truncation_radius > 0.0)) {
    throw std::invalid_argument("truncation radius must be positive");
  }
  long double sum = 0.0L;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != b[i].size()) {
      throw std::invalid_argument("sample points have mixed dimensions");
    }
    double dist = std::sqrt(
        SquaredDistance(a[i].data(), b[i].data(), static_cast<int>(a[i].size())));
    sum += std::min(dist, 2.0 * truncation_radius);
  }
  return static_cast<double>(sum / (2.0 * truncation_radius));
}

DiscreteChannel ReleaseOneAtRandom(const std::vector<std::string>& alphabet,
                                   int n, std::size_t cap) {
  if (n < 1) throw std::invalid_argument("release-one-at-random needs n >= 1");
  std::size_t rows_needed =
      CheckedEnumerationSize(alphabet.size(), n, cap, "release-one dataset space");
  std::vector<std::vector<double>> rows(rows_needed);
  // Row = empirical distribution of the dataset's entries.
  std::vector<std::size_t> digits(static_cast<std::size_t>(n), 0);
  for (std::size_t idx = 0; idx < rows_needed; ++idx) {
    std::vector<double> row(alphabet.size(), 0.0);
    for (std::size_t digit : digits) row[digit] += 1.0 / n;
    rows[idx] = std::move(row);
    for (std::size_t i = digits.size(); i-- > 0;) {
      if (++digits[i] < alphabet.size()) break;
      digits[i] = 0;
    }
  }
  return DiscreteChannel(alphabet, n, alphabet, std::move(rows), cap);
}

}  // namespace privkit
