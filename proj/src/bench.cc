// Copyright 2026 The Privkit Authors. All rights reserved.
// Use of this source code is governed by an Apache-style license that can be
// found in the LICENSE file.

#include "privkit/bench.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "privkit/jsonio.h"

namespace privkit {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Stream index 0xFFFF is reserved for TruncationPropertySuite.
constexpr std::uint64_t kMaxSweepOrdinal = 0xFFFE;
constexpr std::uint64_t kSuiteOrdinal = 0xFFFF;

std::uint64_t StreamIndex(std::uint64_t sweep_ordinal, std::size_t grid,
                          std::uint64_t rep) {
  return (sweep_ordinal << 48) | (static_cast<std::uint64_t>(grid) << 32) |
         rep;
}

void CheckStreamLayout(std::size_t grid_size, std::uint64_t sweep_ordinal) {
  if (sweep_ordinal > kMaxSweepOrdinal) {
    throw std::invalid_argument("sweep_ordinal exceeds the stream layout");
  }
  if (grid_size == 0) {
    throw std::invalid_argument("sweep grid is empty");
  }
  if (grid_size > 0xFFFF) {
    throw std::invalid_argument("sweep grid exceeds the stream layout");
  }
}

// Runs body(0..reps-1), strided over at most `jobs` threads. Replications
// write only their own slot, so the division of labor cannot affect results.
void ParallelFor(int reps, int jobs, const std::function<void(int)>& body) {
  jobs = std::max(1, std::min(jobs, reps));
  if (jobs == 1) {
    for (int t = 0; t < reps; ++t) body(t);
    return;
  }
  std::mutex mu;
  std::exception_ptr first_error;
  std::vector<std::thread> pool;
  pool.reserve(jobs);
  for (int w = 0; w < jobs; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (int t = w; t < reps; t += jobs) body(t);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

// Mean and stderr reduced in replication order, independent of jobs.
RiskPoint Summarize(const std::vector<double>& per_rep, std::int64_t n,
                    int k_bins) {
  const int reps = static_cast<int>(per_rep.size());
  long double sum = 0.0L;
  for (double v : per_rep) sum += v;
  const double mean = static_cast<double>(sum / reps);
  long double ss = 0.0L;
  for (double v : per_rep) {
    const long double c = v - mean;
    ss += c * c;
  }
  RiskPoint point;
  point.n = n;
  point.k_bins = k_bins;
  point.reps = reps;
  point.risk_mean = mean;
  point.risk_stderr =
      reps > 1 ? std::sqrt(static_cast<double>(ss / (reps - 1)) / reps) : 0.0;
  return point;
}

std::string FormatCsvReal(double v) {
  if (std::isnan(v)) return "";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

nlohmann::json JsonOrNull(double v) {
  if (std::isnan(v)) return nullptr;
  return JsonNumber(v);
}

void RejectUnknownKeys(const nlohmann::json& j,
                       std::initializer_list<const char*> allowed,
                       const char* what) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* key : allowed) {
      if (it.key() == key) {
        known = true;
        break;
      }
    }
    if (!known) {
      throw std::invalid_argument(std::string(what) + ": unknown field \"" +
                                  it.key() + "\"");
    }
  }
}

}  // namespace

const char* FamilyKindName(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::kBoundedBall:
      return "bounded-ball";
    case FamilyKind::kTwoPoint:
      return "two-point";
    case FamilyKind::kLipschitzDensity:
      return "lipschitz-density";
  }
  throw std::invalid_argument("unknown family kind");
}

FamilyKind FamilyKindFromName(const std::string& name) {
  if (name == "bounded-ball") return FamilyKind::kBoundedBall;
  if (name == "two-point") return FamilyKind::kTwoPoint;
  if (name == "lipschitz-density") return FamilyKind::kLipschitzDensity;
  throw std::invalid_argument("unknown family \"" + name + "\"");
}

void DistributionFamilySpec::Validate() const {
  switch (kind) {
    case FamilyKind::kBoundedBall:
      if (d < 1) throw std::invalid_argument("bounded-ball: d must be >= 1");
      if (!(r > 0.0) || std::isinf(r)) {
        throw std::invalid_argument("bounded-ball: r must be positive finite");
      }
      return;
    case FamilyKind::kTwoPoint:
      if (!(r > 0.0) || std::isinf(r)) {
        throw std::invalid_argument("two-point: r must be positive finite");
      }
      if (!(k_moments > 1.0)) {
        throw std::invalid_argument("two-point: k_moments must exceed 1");
      }
      if (!(delta_mass > 0.0) || delta_mass > 1.0) {
        throw std::invalid_argument("two-point: delta_mass must be in (0, 1]");
      }
      return;
    case FamilyKind::kLipschitzDensity:
      if (!(std::fabs(slope) <= 1.0)) {
        throw std::invalid_argument("lipschitz-density: |slope| must be <= 1");
      }
      return;
  }
  throw std::invalid_argument("unknown family kind");
}

std::vector<double> DistributionFamilySpec::TrueMean() const {
  switch (kind) {
    case FamilyKind::kBoundedBall:
      return std::vector<double>(d, 0.0);
    case FamilyKind::kTwoPoint:
      // atom * P(atom) = r delta^{-1/k} * delta.
      return {r * std::pow(delta_mass, 1.0 - 1.0 / k_moments)};
    case FamilyKind::kLipschitzDensity:
      return {0.5 + slope / 12.0};
  }
  throw std::invalid_argument("unknown family kind");
}

double DistributionFamilySpec::Density(double x) const {
  if (kind != FamilyKind::kLipschitzDensity) {
    throw std::invalid_argument("Density is defined for lipschitz-density");
  }
  if (x < 0.0 || x > 1.0) throw std::invalid_argument("x outside [0, 1]");
  return 1.0 + slope * (x - 0.5);
}

void DistributionFamilySpec::Sample(std::int64_t count, RngStream* rng,
                                    std::vector<double>* flat) const {
  switch (kind) {
    case FamilyKind::kBoundedBall: {
      for (std::int64_t i = 0; i < count; ++i) {
        double norm_sq = 0.0;
        std::size_t base = flat->size();
        do {
          flat->resize(base);
          norm_sq = 0.0;
          for (int c = 0; c < d; ++c) {
            const double g = rng->NextGaussian();
            flat->push_back(g);
            norm_sq += g * g;
          }
        } while (norm_sq == 0.0);
        const double scale = r / std::sqrt(norm_sq);
        for (int c = 0; c < d; ++c) (*flat)[base + c] *= scale;
      }
      return;
    }
    case FamilyKind::kTwoPoint: {
      const double atom = r * std::pow(delta_mass, -1.0 / k_moments);
      for (std::int64_t i = 0; i < count; ++i) {
        flat->push_back(rng->NextUniform() < delta_mass ? atom : 0.0);
      }
      return;
    }
    case FamilyKind::kLipschitzDensity: {
      // Inverse CDF of F(x) = x + a x (x - 1) / 2: the positive root of
      // (a/2) x^2 + (1 - a/2) x - u.
      const double a = slope;
      for (std::int64_t i = 0; i < count; ++i) {
        const double u = rng->NextUniform();
        if (a == 0.0) {
          flat->push_back(u);
        } else {
          const double b = 1.0 - a / 2.0;
          const double x = (-b + std::sqrt(b * b + 2.0 * a * u)) / a;
          flat->push_back(std::min(1.0, std::max(0.0, x)));
        }
      }
      return;
    }
  }
  throw std::invalid_argument("unknown family kind");
}

nlohmann::json DistributionFamilySpec::ToJson() const {
  nlohmann::json j;
  j["family"] = FamilyKindName(kind);
  switch (kind) {
    case FamilyKind::kBoundedBall:
      j["d"] = d;
      j["r"] = JsonNumber(r);
      break;
    case FamilyKind::kTwoPoint:
      j["r"] = JsonNumber(r);
      j["k_moments"] = JsonNumber(k_moments);
      j["delta_mass"] = JsonNumber(delta_mass);
      break;
    case FamilyKind::kLipschitzDensity:
      j["slope"] = JsonNumber(slope);
      break;
  }
  return j;
}

DistributionFamilySpec DistributionFamilySpec::FromJson(
    const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("family")) {
    throw std::invalid_argument("family spec: expected {\"family\": ...}");
  }
  DistributionFamilySpec spec;
  spec.kind = FamilyKindFromName(j.at("family").get<std::string>());
  switch (spec.kind) {
    case FamilyKind::kBoundedBall:
      RejectUnknownKeys(j, {"family", "d", "r"}, "bounded-ball");
      if (j.contains("d")) spec.d = j.at("d").get<int>();
      if (j.contains("r")) spec.r = NumberFromJson(j.at("r"), "r");
      break;
    case FamilyKind::kTwoPoint:
      RejectUnknownKeys(j, {"family", "r", "k_moments", "delta_mass"},
                        "two-point");
      if (j.contains("r")) spec.r = NumberFromJson(j.at("r"), "r");
      if (j.contains("k_moments")) {
        spec.k_moments = NumberFromJson(j.at("k_moments"), "k_moments");
      }
      if (j.contains("delta_mass")) {
        spec.delta_mass = NumberFromJson(j.at("delta_mass"), "delta_mass");
      }
      break;
    case FamilyKind::kLipschitzDensity:
      RejectUnknownKeys(j, {"family", "slope"}, "lipschitz-density");
      if (j.contains("slope")) spec.slope = NumberFromJson(j.at("slope"), "slope");
      break;
  }
  spec.Validate();
  return spec;
}

RiskCurve::RiskCurve() : fitted_slope(kNaN) {}

double RiskCurve::AxisValue(int i) const {
  if (axis == "k_bins") return points.at(i).k_bins;
  return static_cast<double>(points.at(i).n);
}

nlohmann::json RiskCurve::ToJson() const {
  nlohmann::json j;
  j["mechanism"] = mechanism;
  j["variant"] = variant;
  j["family"] = family;
  j["d"] = d;
  j["k_moments"] = JsonOrNull(k_moments);
  j["r"] = JsonOrNull(r);
  j["eps"] = JsonOrNull(eps);
  j["delta"] = JsonOrNull(delta);
  j["seed"] = seed;
  j["axis"] = axis;
  j["fitted_slope"] = JsonOrNull(fitted_slope);
  j["fit_window"] = {fit_lo, fit_hi};
  nlohmann::json pts = nlohmann::json::array();
  for (const RiskPoint& p : points) {
    pts.push_back({{"n", p.n},
                   {"k_bins", p.k_bins},
                   {"risk_mean", JsonNumber(p.risk_mean)},
                   {"risk_stderr", JsonNumber(p.risk_stderr)},
                   {"reps", p.reps}});
  }
  j["points"] = std::move(pts);
  return j;
}

RiskCurve MeanRiskSweep(const MechanismSpec& spec, NoiseMode mode,
                        const DistributionFamilySpec& family,
                        const std::vector<std::int64_t>& n_values, int reps,
                        std::uint64_t master_seed, int jobs,
                        std::uint64_t sweep_ordinal) {
  family.Validate();
  if (family.Dimension() != spec.d) {
    throw std::invalid_argument("family dimension does not match mechanism d");
  }
  if (reps < 100) throw std::invalid_argument("reps must be >= 100");
  CheckStreamLayout(n_values.size(), sweep_ordinal);

  RiskCurve curve;
  curve.mechanism = "truncated-mean";
  curve.family = FamilyKindName(family.kind);
  curve.d = spec.d;
  curve.k_moments = spec.k_moments;
  curve.r = spec.r;
  curve.seed = master_seed;
  curve.axis = "n";
  if (mode == NoiseMode::kDiagnosticNoNoise) {
    curve.variant = "no-noise";
    curve.eps = kNaN;
    curve.delta = kNaN;
  } else {
    curve.variant = MechanismVariantName(spec.variant);
    switch (spec.variant) {
      case MechanismVariant::kKlGaussian:
        curve.eps = spec.eps_kl;
        curve.delta = kNaN;
        break;
      case MechanismVariant::kApproxDpGaussian:
        curve.eps = spec.eps;
        curve.delta = spec.delta;
        break;
      case MechanismVariant::kSmoothDpLaplace:
        curve.eps = spec.eps;
        curve.delta = kNaN;
        break;
    }
  }

  const std::vector<double> true_mean = family.TrueMean();
  for (std::size_t g = 0; g < n_values.size(); ++g) {
    MechanismSpec point_spec = spec;
    point_spec.n = n_values[g];
    point_spec.Validate();
    std::vector<double> per_rep(reps, 0.0);
    ParallelFor(reps, jobs, [&](int t) {
      RngStream rng(master_seed, StreamIndex(sweep_ordinal, g,
                                             static_cast<std::uint64_t>(t)));
      std::vector<double> flat;
      flat.reserve(static_cast<std::size_t>(point_spec.n) * spec.d);
      family.Sample(point_spec.n, &rng, &flat);
      const std::vector<double> estimate =
          TruncatedMean(flat, point_spec, &rng, mode);
      double err = 0.0;
      for (int c = 0; c < spec.d; ++c) {
        const double diff = estimate[c] - true_mean[c];
        err += diff * diff;
      }
      per_rep[t] = err;
    });
    curve.points.push_back(Summarize(per_rep, n_values[g], 0));
  }
  return curve;
}

RiskCurve HistogramRiskSweep(const HistogramSpec& spec,
                             const DistributionFamilySpec& family,
                             std::int64_t n,
                             const std::vector<int>& k_bins_values, int reps,
                             std::uint64_t master_seed, int jobs,
                             std::uint64_t sweep_ordinal) {
  family.Validate();
  if (family.kind != FamilyKind::kLipschitzDensity) {
    throw std::invalid_argument(
        "histogram sweep expects the lipschitz-density family");
  }
  if (spec.d != 1) {
    throw std::invalid_argument("histogram sweep is one-dimensional");
  }
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  if (reps < 100) throw std::invalid_argument("reps must be >= 100");
  CheckStreamLayout(k_bins_values.size(), sweep_ordinal);

  RiskCurve curve;
  curve.mechanism = "histogram";
  curve.variant = "laplace";
  curve.family = FamilyKindName(family.kind);
  curve.d = 1;
  curve.k_moments = kNaN;
  curve.r = kNaN;
  curve.eps = spec.eps;
  curve.delta = kNaN;
  curve.seed = master_seed;
  curve.axis = "k_bins";

  const double a = family.slope;
  for (std::size_t g = 0; g < k_bins_values.size(); ++g) {
    HistogramSpec point_spec = spec;
    point_spec.k_bins = k_bins_values[g];
    point_spec.Validate();
    const int k = point_spec.k_bins;
    const double w = 1.0 / k;
    std::vector<double> per_rep(reps, 0.0);
    ParallelFor(reps, jobs, [&](int t) {
      RngStream rng(master_seed, StreamIndex(sweep_ordinal, g,
                                             static_cast<std::uint64_t>(t)));
      std::vector<double> flat;
      flat.reserve(n);
      family.Sample(n, &rng, &flat);
      std::vector<std::vector<double>> points(flat.size());
      for (std::size_t i = 0; i < flat.size(); ++i) points[i] = {flat[i]};
      const HistogramEstimate est = PrivateHistogram(points, point_spec, &rng);
      // Exact L2 error of a piecewise-constant estimate against the linear
      // density: per bin, w (h_j - fbar_j)^2 plus the within-bin residual
      // a^2 w^3 / 12.
      double risk = 0.0;
      for (int j = 0; j < k; ++j) {
        const double center = (j + 0.5) * w;
        const double fbar = 1.0 + a * (center - 0.5);
        const double diff = est.heights[j] - fbar;
        risk += w * diff * diff;
      }
      risk += a * a * w * w / 12.0;
      per_rep[t] = risk;
    });
    curve.points.push_back(Summarize(per_rep, n, k));
  }
  return curve;
}

double FitExponent(RiskCurve* curve, int lo, int hi) {
  if (curve == nullptr) throw std::invalid_argument("curve is null");
  const int size = static_cast<int>(curve->points.size());
  if (lo < 0 || hi > size || hi - lo < 4) {
    throw std::invalid_argument("fit window needs at least 4 grid points");
  }
  double sx = 0.0, sy = 0.0;
  std::vector<double> xs, ys;
  for (int i = lo; i < hi; ++i) {
    const double risk = curve->points[i].risk_mean;
    if (!(risk > 0.0)) {
      throw std::invalid_argument("fit window contains nonpositive risk");
    }
    xs.push_back(std::log(curve->AxisValue(i)));
    ys.push_back(std::log(risk));
    sx += xs.back();
    sy += ys.back();
  }
  const double mx = sx / xs.size();
  const double my = sy / ys.size();
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  if (sxx == 0.0) throw std::invalid_argument("fit window axis is constant");
  curve->fitted_slope = sxy / sxx;
  curve->fit_lo = lo;
  curve->fit_hi = hi;
  return curve->fitted_slope;
}

std::string RiskCurvesToCsv(const std::vector<RiskCurve>& curves) {
  std::string out =
      "mechanism,variant,family,d,k_moments,r,eps,delta,n,k_bins,reps,"
      "risk_mean,risk_stderr,seed\n";
  for (const RiskCurve& curve : curves) {
    for (const RiskPoint& p : curve.points) {
      out += curve.mechanism;
      out += ',';
      out += curve.variant;
      out += ',';
      out += curve.family;
      out += ',';
      out += std::to_string(curve.d);
      out += ',';
      out += FormatCsvReal(curve.k_moments);
      out += ',';
      out += FormatCsvReal(curve.r);
      out += ',';
      out += FormatCsvReal(curve.eps);
      out += ',';
      out += FormatCsvReal(curve.delta);
      out += ',';
      out += std::to_string(p.n);
      out += ',';
      if (p.k_bins != 0) out += std::to_string(p.k_bins);
      out += ',';
      out += std::to_string(p.reps);
      out += ',';
      out += FormatCsvReal(p.risk_mean);
      out += ',';
      out += FormatCsvReal(p.risk_stderr);
      out += ',';
      out += std::to_string(curve.seed);
      out += '\n';
    }
  }
  return out;
}

void RateTableConfig::Validate() const {
  if (d_small < 1 || d_large <= d_small) {
    throw std::invalid_argument("rate table needs 1 <= d_small < d_large");
  }
  if (!(eps > 0.0) || std::isinf(eps)) {
    throw std::invalid_argument("rate table eps must be positive finite");
  }
  if (!(r > 0.0) || std::isinf(r)) {
    throw std::invalid_argument("rate table r must be positive finite");
  }
  for (const std::vector<std::int64_t>* grid :
       {&privacy_grid, &statistical_grid}) {
    if (grid->size() < 4 || grid->size() > 0xFFFF) {
      throw std::invalid_argument("rate table grids need 4 to 65535 points");
    }
    for (std::size_t i = 0; i < grid->size(); ++i) {
      if ((*grid)[i] < 1 || (i > 0 && (*grid)[i] <= (*grid)[i - 1])) {
        throw std::invalid_argument(
            "rate table grids must be strictly increasing and positive");
      }
    }
  }
  if (reps < 100) throw std::invalid_argument("rate table reps must be >= 100");
  if (jobs < 1) throw std::invalid_argument("jobs must be >= 1");
}

nlohmann::json RateTableConfig::ToJson() const {
  return {{"d_small", d_small},
          {"d_large", d_large},
          {"eps", JsonNumber(eps)},
          {"r", JsonNumber(r)},
          {"privacy_grid", privacy_grid},
          {"statistical_grid", statistical_grid},
          {"reps", reps},
          {"master_seed", master_seed},
          {"jobs", jobs}};
}

RateTableConfig RateTableConfig::FromJson(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("rate table config: object");
  RejectUnknownKeys(j,
                    {"d_small", "d_large", "eps", "r", "privacy_grid",
                     "statistical_grid", "reps"},
                    "rate table config");
  RateTableConfig config;
  if (j.contains("d_small")) config.d_small = j.at("d_small").get<int>();
  if (j.contains("d_large")) config.d_large = j.at("d_large").get<int>();
  if (j.contains("eps")) config.eps = NumberFromJson(j.at("eps"), "eps");
  if (j.contains("r")) config.r = NumberFromJson(j.at("r"), "r");
  if (j.contains("privacy_grid")) {
    config.privacy_grid =
        j.at("privacy_grid").get<std::vector<std::int64_t>>();
  }
  if (j.contains("statistical_grid")) {
    config.statistical_grid =
        j.at("statistical_grid").get<std::vector<std::int64_t>>();
  }
  if (j.contains("reps")) config.reps = j.at("reps").get<int>();
  return config;
}

nlohmann::json RateTableRow::ToJson() const {
  return {{"label", label},
          {"quantity", quantity},
          {"measured", JsonNumber(measured)},
          {"expected", JsonNumber(expected)},
          {"accept_lo", JsonNumber(lo)},
          {"accept_hi", JsonNumber(hi)},
          {"gated", gated},
          {"holds", holds},
          {"curve", curve.ToJson()}};
}

nlohmann::json RateTableReport::ToJson() const {
  nlohmann::json rows_json = nlohmann::json::array();
  for (const RateTableRow& row : rows) rows_json.push_back(row.ToJson());
  return {{"config", config.ToJson()},
          {"rows", std::move(rows_json)},
          {"holds", holds}};
}

namespace {

MechanismSpec RateTableMechanism(MechanismVariant variant, int d,
                                 const RateTableConfig& config) {
  MechanismSpec spec;
  spec.variant = variant;
  spec.d = d;
  spec.n = 1;
  spec.r = config.r;
  spec.k_moments = kInf;
  if (variant == MechanismVariant::kKlGaussian) {
    spec.eps_kl = config.eps;
  } else {
    spec.eps = config.eps;
  }
  return spec;
}

DistributionFamilySpec SphereFamily(int d, double r) {
  DistributionFamilySpec family;
  family.kind = FamilyKind::kBoundedBall;
  family.d = d;
  family.r = r;
  return family;
}

RateTableRow SlopeRow(std::string label, RiskCurve curve, double expected,
                      bool gated) {
  RateTableRow row;
  row.label = std::move(label);
  row.quantity = "slope";
  row.curve = std::move(curve);
  FitExponent(&row.curve, 0, static_cast<int>(row.curve.points.size()));
  row.measured = row.curve.fitted_slope;
  row.expected = expected;
  row.lo = expected - 0.25;
  row.hi = expected + 0.25;
  row.gated = gated;
  row.holds = row.measured >= row.lo && row.measured <= row.hi;
  return row;
}

// Ratio of the risks at the first privacy-grid point, the most
// noise-dominated one; theory predicts the ratio of the noise second
// moments, checked within a factor 1.6 either way.
RateTableRow RatioRow(std::string label, RiskCurve large_curve,
                      double small_risk, double expected) {
  RateTableRow row;
  row.label = std::move(label);
  row.quantity = "ratio";
  row.curve = std::move(large_curve);
  row.measured = row.curve.points.front().risk_mean / small_risk;
  row.expected = expected;
  row.lo = expected / 1.6;
  row.hi = expected * 1.6;
  row.gated = true;
  row.holds = row.measured >= row.lo && row.measured <= row.hi;
  return row;
}

}  // namespace

RateTableReport RunRateTable(const RateTableConfig& config) {
  config.Validate();
  RateTableReport report;
  report.config = config;

  const DistributionFamilySpec ball_small = SphereFamily(config.d_small, config.r);
  const DistributionFamilySpec ball_large = SphereFamily(config.d_large, config.r);
  const MechanismSpec kl_small =
      RateTableMechanism(MechanismVariant::kKlGaussian, config.d_small, config);
  const MechanismSpec kl_large =
      RateTableMechanism(MechanismVariant::kKlGaussian, config.d_large, config);
  const MechanismSpec smooth_small = RateTableMechanism(
      MechanismVariant::kSmoothDpLaplace, config.d_small, config);
  const MechanismSpec smooth_large = RateTableMechanism(
      MechanismVariant::kSmoothDpLaplace, config.d_large, config);

  auto sweep = [&](const MechanismSpec& spec, NoiseMode mode,
                   const DistributionFamilySpec& family,
                   const std::vector<std::int64_t>& grid,
                   std::uint64_t ordinal) {
    return MeanRiskSweep(spec, mode, family, grid, config.reps,
                         config.master_seed, config.jobs, ordinal);
  };

  RiskCurve no_noise = sweep(kl_small, NoiseMode::kDiagnosticNoNoise,
                             ball_small, config.privacy_grid, 0);
  RiskCurve kl_privacy = sweep(kl_small, NoiseMode::kPrivate, ball_small,
                               config.privacy_grid, 1);
  RiskCurve kl_privacy_large = sweep(kl_large, NoiseMode::kPrivate, ball_large,
                                     config.privacy_grid, 2);
  RiskCurve smooth_privacy = sweep(smooth_small, NoiseMode::kPrivate,
                                   ball_small, config.privacy_grid, 3);
  RiskCurve smooth_statistical = sweep(smooth_small, NoiseMode::kPrivate,
                                       ball_small, config.statistical_grid, 4);
  RiskCurve smooth_privacy_large = sweep(
      smooth_large, NoiseMode::kPrivate, ball_large, config.privacy_grid, 5);

  const double dim_ratio =
      static_cast<double>(config.d_large) / config.d_small;

  const double kl_small_risk = kl_privacy.points.front().risk_mean;
  const double smooth_small_risk = smooth_privacy.points.front().risk_mean;

  report.rows.push_back(
      SlopeRow("no-noise-privacy-slope", std::move(no_noise), -1.0, true));
  report.rows.push_back(SlopeRow("kl-gaussian-privacy-slope",
                                 std::move(kl_privacy), -2.0, false));
  report.rows.push_back(RatioRow("kl-gaussian-dimension-ratio",
                                 std::move(kl_privacy_large), kl_small_risk,
                                 dim_ratio));
  report.rows.push_back(SlopeRow("smooth-dp-laplace-privacy-slope",
                                 std::move(smooth_privacy), -2.0, true));
  report.rows.push_back(SlopeRow("smooth-dp-laplace-statistical-slope",
                                 std::move(smooth_statistical), -1.0, true));
  report.rows.push_back(RatioRow("smooth-dp-laplace-dimension-ratio",
                                 std::move(smooth_privacy_large),
                                 smooth_small_risk, dim_ratio * dim_ratio));

  report.holds = true;
  for (const RateTableRow& row : report.rows) {
    if (row.gated && !row.holds) report.holds = false;
  }
  return report;
}

nlohmann::json LemmaCaseResult::ToJson() const {
  return {{"name", name},
          {"truncation_radius", JsonNumber(truncation_radius)},
          {"bias_norm", JsonNumber(bias_norm)},
          {"bias_bound", JsonNumber(bias_bound)},
          {"bias_stderr", JsonNumber(bias_stderr)},
          {"variance_gap_mean", JsonNumber(variance_gap_mean)},
          {"variance_gap_stderr", JsonNumber(variance_gap_stderr)},
          {"min_pointwise_gap", JsonNumber(min_pointwise_gap)},
          {"bias_holds", bias_holds},
          {"variance_holds", variance_holds},
          {"holds", holds}};
}

nlohmann::json LemmaSuiteReport::ToJson() const {
  nlohmann::json cases_json = nlohmann::json::array();
  for (const LemmaCaseResult& c : cases) cases_json.push_back(c.ToJson());
  return {{"master_seed", master_seed},
          {"draws_per_case", draws_per_case},
          {"cases", std::move(cases_json)},
          {"holds", holds}};
}

namespace {

// One lemma-suite distribution with analytic mean and k-th radial moment.
struct LemmaCaseConfig {
  std::string name;
  bool lognormal = false;
  int d = 1;
  double k = 2.0;
  double radial_moment = 0.0;  // E||X||^k
  double truncation = 1.0;
  std::vector<double> mean;
  // Atom-or-zero draws: the atom vector and its probability.
  std::vector<double> atom;
  double atom_prob = 0.0;
  // Lognormal draws: X = exp(mu + sigma Z), scalar.
  double mu = 0.0;
  double sigma = 1.0;

  void Draw(RngStream* rng, std::vector<double>* x) const {
    x->clear();
    if (lognormal) {
      x->push_back(std::exp(mu + sigma * rng->NextGaussian()));
      return;
    }
    if (rng->NextUniform() < atom_prob) {
      *x = atom;
    } else {
      x->assign(d, 0.0);
    }
  }
};

std::vector<double> UnitVector(int d, RngStream* rng) {
  std::vector<double> v(d);
  double norm_sq = 0.0;
  do {
    norm_sq = 0.0;
    for (int c = 0; c < d; ++c) {
      v[c] = rng->NextGaussian();
      norm_sq += v[c] * v[c];
    }
  } while (norm_sq == 0.0);
  const double inv = 1.0 / std::sqrt(norm_sq);
  for (int c = 0; c < d; ++c) v[c] *= inv;
  return v;
}

LemmaCaseConfig AtomCase(int index, double r, double k, double delta,
                         double t_ratio, RngStream* rng, int d) {
  LemmaCaseConfig cfg;
  cfg.d = d;
  cfg.k = k;
  const double magnitude = r * std::pow(delta, -1.0 / k);
  std::vector<double> direction = UnitVector(d, rng);
  cfg.atom.resize(d);
  cfg.mean.resize(d);
  for (int c = 0; c < d; ++c) {
    cfg.atom[c] = magnitude * direction[c];
    cfg.mean[c] = delta * cfg.atom[c];
  }
  cfg.atom_prob = delta;
  cfg.radial_moment = delta * std::pow(magnitude, k);
  cfg.truncation = t_ratio * magnitude;
  char buf[96];
  std::snprintf(buf, sizeof(buf), "%02d-atom-d%d-k%.2f-t%.2f", index, d, k,
                t_ratio);
  cfg.name = buf;
  return cfg;
}

LemmaCaseConfig LognormalCase(int index, double mu, double sigma, double k,
                              double z_quantile) {
  LemmaCaseConfig cfg;
  cfg.lognormal = true;
  cfg.d = 1;
  cfg.k = k;
  cfg.mu = mu;
  cfg.sigma = sigma;
  cfg.mean = {std::exp(mu + sigma * sigma / 2.0)};
  cfg.radial_moment = std::exp(k * mu + k * k * sigma * sigma / 2.0);
  cfg.truncation = std::exp(mu + z_quantile * sigma);
  char buf[96];
  std::snprintf(buf, sizeof(buf), "%02d-lognormal-s%.2f-k%.2f-z%.2f", index,
                sigma, k, z_quantile);
  cfg.name = buf;
  return cfg;
}

std::vector<LemmaCaseConfig> LemmaSuiteCases(std::uint64_t master_seed) {
  RngStream cfg_rng(master_seed, (kSuiteOrdinal << 48) | 0xFFFFFFFFULL);
  std::vector<LemmaCaseConfig> cases;
  // Fixed boundary cases: support strictly inside the ball (projection is
  // the identity, zero bias) and a truncation radius far beyond the
  // support's effective range.
  {
    LemmaCaseConfig inside =
        AtomCase(0, 0.8, 2.0, 1.0, 1.25, &cfg_rng, 2);
    inside.name = "00-point-mass-inside-ball";
    cases.push_back(std::move(inside));
    cases.push_back(LognormalCase(1, 0.0, 0.5, 2.0, 8.0));
    cases.back().name = "01-lognormal-huge-radius";
  }
  for (int i = 2; i < 20; ++i) {
    if (i % 4 == 3) {
      const double mu = -0.5 + cfg_rng.NextUniform();
      const double sigma = 0.3 + 0.7 * cfg_rng.NextUniform();
      const double k = 1.5 + 2.5 * cfg_rng.NextUniform();
      const double z = -0.5 + 2.5 * cfg_rng.NextUniform();
      cases.push_back(LognormalCase(i, mu, sigma, k, z));
    } else {
      const int d = (i % 3) + 1;
      const double k = 1.5 + 3.0 * cfg_rng.NextUniform();
      const double delta = 0.02 + 0.28 * cfg_rng.NextUniform();
      const double r = 0.5 + cfg_rng.NextUniform();
      const double t_ratio = 0.15 + 1.05 * cfg_rng.NextUniform();
      cases.push_back(AtomCase(i, r, k, delta, t_ratio, &cfg_rng, d));
    }
  }
  return cases;
}

LemmaCaseResult RunLemmaCase(const LemmaCaseConfig& cfg,
                             std::uint64_t master_seed, int case_index,
                             std::int64_t draws) {
  RngStream rng(master_seed,
                (kSuiteOrdinal << 48) | static_cast<std::uint64_t>(case_index));
  const int d = cfg.d;
  std::vector<double> sum(d, 0.0), sum_sq(d, 0.0);
  long double gap_sum = 0.0L, gap_sq = 0.0L;
  double min_gap = kInf;
  std::vector<double> a, b;
  const std::int64_t pairs = draws / 2;
  for (std::int64_t i = 0; i < pairs; ++i) {
    cfg.Draw(&rng, &a);
    cfg.Draw(&rng, &b);
    const std::vector<double> pa = TruncateProject(a, cfg.truncation);
    const std::vector<double> pb = TruncateProject(b, cfg.truncation);
    double raw = 0.0, proj = 0.0;
    for (int c = 0; c < d; ++c) {
      sum[c] += pa[c] + pb[c];
      sum_sq[c] += pa[c] * pa[c] + pb[c] * pb[c];
      const double dr = a[c] - b[c];
      const double dp = pa[c] - pb[c];
      raw += dr * dr;
      proj += dp * dp;
    }
    const double gap = (raw - proj) / 2.0;
    gap_sum += gap;
    gap_sq += static_cast<long double>(gap) * gap;
    min_gap = std::min(min_gap, gap);
  }
  const std::int64_t m = 2 * pairs;

  LemmaCaseResult result;
  result.name = cfg.name;
  result.truncation_radius = cfg.truncation;
  double bias_sq = 0.0, var_total = 0.0;
  for (int c = 0; c < d; ++c) {
    const double mean_c = sum[c] / m;
    const double diff = mean_c - cfg.mean[c];
    bias_sq += diff * diff;
    const double var_c =
        std::max(0.0, (sum_sq[c] - m * mean_c * mean_c) / (m - 1));
    var_total += var_c;
  }
  result.bias_norm = std::sqrt(bias_sq);
  result.bias_stderr = std::sqrt(var_total / m);
  result.bias_bound = cfg.radial_moment /
                      ((cfg.k - 1.0) * std::pow(cfg.truncation, cfg.k - 1.0));
  result.bias_holds =
      result.bias_norm <= result.bias_bound + 4.0 * result.bias_stderr;

  const double gap_mean = static_cast<double>(gap_sum / pairs);
  const long double gap_var =
      pairs > 1
          ? std::max<long double>(
                0.0L, (gap_sq - pairs * static_cast<long double>(gap_mean) *
                                    gap_mean) /
                          (pairs - 1))
          : 0.0L;
  result.variance_gap_mean = gap_mean;
  result.variance_gap_stderr =
      std::sqrt(static_cast<double>(gap_var / pairs));
  result.min_pointwise_gap = min_gap;
  result.variance_holds = min_gap >= -1e-9 &&
                          gap_mean >= -4.0 * result.variance_gap_stderr;
  result.holds = result.bias_holds && result.variance_holds;
  return result;
}

}  // namespace

LemmaSuiteReport TruncationPropertySuite(std::uint64_t master_seed) {
  LemmaSuiteReport report;
  report.master_seed = master_seed;
  report.draws_per_case = 100000;
  report.holds = true;
  const std::vector<LemmaCaseConfig> cases = LemmaSuiteCases(master_seed);
  for (std::size_t i = 0; i < cases.size(); ++i) {
    LemmaCaseResult result = RunLemmaCase(cases[i], master_seed,
                                          static_cast<int>(i),
                                          report.draws_per_case);
    if (!result.holds) report.holds = false;
    report.cases.push_back(std::move(result));
  }
  return report;
}

}  // namespace privkit
