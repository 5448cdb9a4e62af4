// Acceptance gate. Nine numbered criteria, each a self-contained check
// with its own tolerance; every test prints exactly one line of the form
//
//   [criterion N] PASS
//
// (or FAIL) so the suite can be skimmed from the log. The unit suites own
// the fine-grained diagnostics; this file pins the end-to-end claims.

#include <gtest/gtest.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "privkit/audit.h"
#include "privkit/bench.h"
#include "privkit/bounds.h"
#include "privkit/channel.h"
#include "privkit/distribution.h"
#include "privkit/divergence.h"
#include "privkit/histogram.h"
#include "privkit/mechanisms.h"
#include "privkit/rng.h"
#include "privkit/synthetic.h"

namespace privkit {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Prints the verdict line when the test body finishes, and enforces a
// wall-clock budget where one is stated.
class Criterion {
 public:
  explicit Criterion(int number, double budget_seconds = 0.0)
      : number_(number),
        budget_seconds_(budget_seconds),
        start_(std::chrono::steady_clock::now()) {}

  ~Criterion() {
    const double elapsed = Seconds();
    if (budget_seconds_ > 0.0) {
      EXPECT_LT(elapsed, budget_seconds_)
          << "criterion " << number_ << " exceeded its time budget";
    }
    const bool ok = !testing::Test::HasFailure();
    std::cout << "[criterion " << number_ << "] " << (ok ? "PASS" : "FAIL")
              << std::endl;
  }

  double Seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_)
        .count();
  }

 private:
  int number_;
  double budget_seconds_;
  std::chrono::steady_clock::time_point start_;
};

std::size_t FindDataset(const DiscreteChannel& channel,
                        const std::string& key) {
  for (std::size_t i = 0; i < channel.dataset_count(); ++i) {
    if (channel.DatasetKey(i) == key) return i;
  }
  ADD_FAILURE() << "dataset \"" << key << "\" not found";
  return 0;
}

std::size_t FindOutput(const DiscreteChannel& channel,
                       const std::string& label) {
  const std::vector<std::string>& outputs = channel.output_set();
  for (std::size_t t = 0; t < outputs.size(); ++t) {
    if (outputs[t] == label) return t;
  }
  ADD_FAILURE() << "output \"" << label << "\" not found";
  return 0;
}

// Criterion 1: the hockey-stick and testing characterizations of the tight
// approximate-DP level agree to 1e-9 across 200 random channels and a grid
// of epsilon values.
TEST(AcceptanceTest, Criterion1TwoRoutesToTheTightDelta) {
  Criterion criterion(1, 10.0);
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    RngStream rng(90001, static_cast<std::uint64_t>(i));
    const DiscreteChannel channel =
        RandomChannel(2 + i % 2, 1 + i % 2, 2 + i % 5, &rng);
    for (double eps : {0.0, 0.05, 0.3, 1.0}) {
      const double hockey = TightApproxDpDelta(channel, eps);
      const double testing_delta = TightTestingDelta(channel, eps);
      worst = std::max(worst, std::fabs(hockey - testing_delta));
    }
  }
  EXPECT_LE(worst, 1e-9) << "worst route disagreement " << worst;
  std::cout << "  max |hockey-stick - testing| over 800 audits: " << worst
            << "\n";
}

// Criterion 2: the contraction inequality for the dataset-to-output map
// holds on 100 random instances, both through the packaged iid verifier
// and through a hand-assembled non-iid route.
TEST(AcceptanceTest, Criterion2ContractionHoldsOnRandomInstances) {
  Criterion criterion(2, 30.0);

  for (int i = 0; i < 50; ++i) {
    RngStream rng(90002, static_cast<std::uint64_t>(i));
    const DiscreteChannel channel = MixWithUniform(
        RandomChannel(2, 2, 3, &rng), i % 2 == 0 ? 0.6 : 0.8);
    const FiniteDistribution p0 =
        RandomDistribution(channel.input_alphabet(), &rng);
    const FiniteDistribution p1 =
        RandomDistribution(channel.input_alphabet(), &rng);
    const ContractionReport report = VerifyContraction(channel, p0, p1);
    EXPECT_TRUE(report.holds) << "iid instance " << i;
  }

  const FDivergenceSpec tv_spec = FDivergenceSpec::TotalVariation();
  for (int i = 0; i < 50; ++i) {
    RngStream rng(90002, 1000 + static_cast<std::uint64_t>(i));
    const int n = 2 + i % 2;
    const DiscreteChannel channel =
        MixWithUniform(RandomChannel(2, n, 3, &rng), 0.7);
    const double eps_tv = TightFPrivacyBound(channel, tv_spec);

    std::vector<FiniteDistribution> components0, components1;
    for (int c = 0; c < n; ++c) {
      components0.push_back(
          RandomDistribution(channel.input_alphabet(), &rng));
      components1.push_back(
          RandomDistribution(channel.input_alphabet(), &rng));
    }
    const FiniteDistribution joint0 = ProductDistribution(components0);
    const FiniteDistribution joint1 = ProductDistribution(components1);
    const double marginal_tv = TvDistance(ChannelMarginal(channel, joint0),
                                          ChannelMarginal(channel, joint1));
    const double linear = ContractionLinearTerm(components0, components1,
                                                eps_tv);
    const double product = TvDistance(joint0, joint1);
    EXPECT_LE(marginal_tv, std::min(linear, product) + 1e-12)
        << "non-iid instance " << i;
  }
}

// Criterion 3: the conditional-test translation, both directions. Forward:
// channels with bounded log ratios satisfy the mapped conditional-test
// level. Converse: channels violating a DP level yield a checkable witness
// at the reparametrized conditional-test level.
TEST(AcceptanceTest, Criterion3ConditionalTestMapsBothWays) {
  Criterion criterion(3, 60.0);

  for (int i = 0; i < 100; ++i) {
    RngStream rng(90003, static_cast<std::uint64_t>(i));
    const DiscreteChannel channel =
        RandomBoundedRatioChannel(2, 1, 3, 0.18, &rng);
    const double eps = TightPureDpEpsilon(channel);
    ASSERT_LE(eps, 0.2) << "forward instance " << i;
    const ChtpParams params = ChtpParamsFromDp(eps, 0.0);
    const PrivacyVerdict verdict =
        AuditChtp(channel, params.eps_ch, params.delta_ch);
    EXPECT_TRUE(verdict.holds) << "forward instance " << i;
  }

  const double eps = 0.1, delta = 0.01;
  const double eps_ch = std::tanh(eps / 4.0);
  const double delta_ch = delta * std::exp(-eps / 2.0);
  int witnessed = 0;
  for (int attempt = 0; attempt < 400 && witnessed < 100; ++attempt) {
    RngStream rng(90003, 1000 + static_cast<std::uint64_t>(attempt));
    const DiscreteChannel channel = RandomChannel(2, 1, 3, &rng);
    if (TightApproxDpDelta(channel, eps) <= delta) continue;
    ++witnessed;

    const ChtpConverseWitness witness =
        FindChtpConverseWitness(channel, eps, delta);
    ASSERT_TRUE(witness.found) << "attempt " << attempt;
    EXPECT_NEAR(witness.eps_ch, eps_ch, 1e-12);
    EXPECT_NEAR(witness.delta_ch, delta_ch, 1e-12);

    // The witness quantities must certify a strict conditional-test
    // violation at the reparametrized level.
    EXPECT_LT(witness.error_sum, 1.0 - eps_ch);
    EXPECT_GT(witness.mass_a, delta_ch);
    EXPECT_GT(witness.mass_b, delta_ch);
    EXPECT_GT(witness.hockey_stick, delta);

    // Recompute the violating mass from the raw rows over the named event.
    const std::vector<double>& pa =
        channel.row(FindDataset(channel, witness.dataset_a));
    const std::vector<double>& pb =
        channel.row(FindDataset(channel, witness.dataset_b));
    double recomputed = 0.0;
    for (const std::string& label : witness.upper_set) {
      const std::size_t t = FindOutput(channel, label);
      recomputed += pa[t] - std::exp(eps) * pb[t];
    }
    EXPECT_NEAR(recomputed, witness.hockey_stick, 1e-12);
  }
  EXPECT_EQ(witnessed, 100);
  std::cout << "  converse witnesses verified: " << witnessed << "\n";
}

// Criterion 4: the Monte Carlo rate table reproduces the predicted risk
// scalings; every gated row lands inside its acceptance window.
TEST(AcceptanceTest, Criterion4RateTableReproducesTheScalings) {
  Criterion criterion(4, 120.0);
  RateTableConfig config;
  config.reps = 1000;
  config.master_seed = 424242;
  config.jobs = 1;
  const RateTableReport report = RunRateTable(config);

  ASSERT_EQ(report.rows.size(), 6u);
  for (const RateTableRow& row : report.rows) {
    std::cout << "  " << row.label << ": measured " << row.measured
              << ", window [" << row.lo << ", " << row.hi << "]"
              << (row.gated ? "" : " (ungated)") << "\n";
    if (row.gated) {
      EXPECT_TRUE(row.holds) << row.label;
      EXPECT_GE(row.measured, row.lo) << row.label;
      EXPECT_LE(row.measured, row.hi) << row.label;
    }
  }
  EXPECT_TRUE(report.holds);
}

// Criterion 5: the KL calibration is exact, not merely bounded: worst-case
// neighboring samples drive the release KL divergence to the target level
// within 1e-9, across dimensions, moments, and budgets.
TEST(AcceptanceTest, Criterion5KlCalibrationIsTightAtTheWorstCase) {
  Criterion criterion(5);
  struct Config {
    int d;
    std::int64_t n;
    double r, k, eps_kl;
  };
  const std::vector<Config> configs = {{1, 10, 1.0, 2.0, 0.5},
                                       {2, 25, 1.0, 2.0, 0.25},
                                       {4, 100, 2.0, 3.0, 1.0},
                                       {3, 17, 0.5, 1.5, 0.05},
                                       {2, 40, 1.5, kInf, 0.8}};
  for (const Config& c : configs) {
    MechanismSpec spec;
    spec.variant = MechanismVariant::kKlGaussian;
    spec.d = c.d;
    spec.n = c.n;
    spec.r = c.r;
    spec.k_moments = c.k;
    spec.eps_kl = c.eps_kl;
    spec.Validate();

    const double radius = spec.TruncationRadius();
    std::vector<std::vector<double>> sample_a(c.n,
                                              std::vector<double>(c.d, 0.0));
    std::vector<std::vector<double>> sample_b = sample_a;
    sample_a[0][0] = 10.0 * radius;
    sample_b[0][0] = -10.0 * radius;

    const double kl = TruncatedMeanKlDivergence(sample_a, sample_b, spec);
    EXPECT_NEAR(kl, c.eps_kl, 1e-9)
        << "d=" << c.d << " n=" << c.n << " k=" << c.k;
  }
}

// Criterion 6: the private histogram's measured risk tracks the predicted
// risk profile within a factor of 3 at every bin count, and the measured
// optimum lands within one grid step of the predicted optimum.
TEST(AcceptanceTest, Criterion6HistogramRiskProfileAndOptimum) {
  Criterion criterion(6, 60.0);
  const double slope = 0.8, eps = 1.0;
  const std::int64_t n = 10000;
  const std::vector<int> k_grid = {2, 4, 8, 16, 32};

  HistogramSpec spec;
  spec.d = 1;
  spec.k_bins = 2;
  spec.eps = eps;

  DistributionFamilySpec family;
  family.kind = FamilyKind::kLipschitzDensity;
  family.slope = slope;

  const RiskCurve curve =
      HistogramRiskSweep(spec, family, n, k_grid, 2000, 424242, 1, 300);

  std::size_t measured_argmin = 0;
  std::size_t predicted_argmin = 0;
  double predicted_best = kInf;
  for (std::size_t i = 0; i < k_grid.size(); ++i) {
    const double k = k_grid[i];
    const double predicted = k / n + (slope * slope / 12.0) / (k * k) +
                             8.0 * k * k / (n * n * eps * eps);
    const double measured = curve.points[i].risk_mean;
    EXPECT_GE(measured, predicted / 3.0) << "k=" << k;
    EXPECT_LE(measured, predicted * 3.0) << "k=" << k;
    std::cout << "  k=" << k_grid[i] << ": measured " << measured
              << ", predicted " << predicted << "\n";
    if (measured < curve.points[measured_argmin].risk_mean) {
      measured_argmin = i;
    }
    if (predicted < predicted_best) {
      predicted_best = predicted;
      predicted_argmin = i;
    }
  }

  // The theoretical optimum min(n^{1/3}, sqrt(n eps)) falls between grid
  // points; the measured argmin must land within one step of the grid
  // point nearest to it (in log scale).
  const double k_star =
      std::min(std::pow(static_cast<double>(n), 1.0 / 3.0),
               std::sqrt(static_cast<double>(n) * eps));
  std::size_t nearest = 0;
  for (std::size_t i = 1; i < k_grid.size(); ++i) {
    if (std::fabs(std::log(k_grid[i] / k_star)) <
        std::fabs(std::log(k_grid[nearest] / k_star))) {
      nearest = i;
    }
  }
  const auto diff = measured_argmin > nearest ? measured_argmin - nearest
                                              : nearest - measured_argmin;
  EXPECT_LE(diff, 1u) << "measured argmin k=" << k_grid[measured_argmin]
                      << ", continuum optimum " << k_star;
  EXPECT_LE(std::max(measured_argmin, predicted_argmin) -
                std::min(measured_argmin, predicted_argmin),
            1u);
}

// Criterion 7: the truncation bias and variance bounds hold empirically on
// all twenty stress cases at 1e5 draws each.
TEST(AcceptanceTest, Criterion7TruncationBoundsSurviveStress) {
  Criterion criterion(7);
  const LemmaSuiteReport report = TruncationPropertySuite(424242);
  EXPECT_EQ(report.cases.size(), 20u);
  EXPECT_EQ(report.draws_per_case, 100000);
  for (const LemmaCaseResult& c : report.cases) {
    EXPECT_TRUE(c.holds) << c.name;
  }
  EXPECT_TRUE(report.holds);
}

// Criterion 8: the mass-everywhere property holds at the audited pure-DP
// level on 50 random channels, with the full subset enumeration.
TEST(AcceptanceTest, Criterion8MassEverywhereAtTheAuditedLevel) {
  Criterion criterion(8);
  for (int i = 0; i < 50; ++i) {
    RngStream rng(90008, static_cast<std::uint64_t>(i));
    const DiscreteChannel channel = RandomChannel(3, 3, 4, &rng);
    const double eps = TightPureDpEpsilon(channel);
    const MassEverywhereReport report =
        VerifyMassEverywhere(channel, eps, 0.5, 0, 1, 2);
    EXPECT_TRUE(report.holds) << "instance " << i;
    EXPECT_EQ(report.subsets_checked, 16u) << "instance " << i;
    EXPECT_GE(report.min_slack, -1e-12) << "instance " << i;
  }
}

// Criterion 9: the closed-form evaluators agree with independent second
// evaluations to 1e-12.
TEST(AcceptanceTest, Criterion9EvaluatorsMatchIndependentArithmetic) {
  Criterion criterion(9);

  {
    // Mean-estimation bound vs. its two-point construction: the bound must
    // equal (gap/4)^2 at the clamped mass, two parameter sets.
    struct Args {
      double r, k;
      std::int64_t n;
      double eps;
    };
    for (const Args& a : std::vector<Args>{{1.0, 2.0, 100, 0.1},
                                           {0.5, 3.0, 1000, 0.2}}) {
      const TvMeanBound bound = TvMeanLowerBound(a.r, a.k, a.n, a.eps);
      const double mass = std::min(1.0, 1.0 / (4.0 * a.n * a.eps));
      EXPECT_NEAR(bound.value,
                  (a.r * a.r / 4.0) * std::pow(mass, 2.0 - 2.0 / a.k), 1e-12);
      const TwoPointConstruction two_point =
          TwoPointMeanConstruction(a.r, a.k, mass);
      const double gap = two_point.theta1 - two_point.theta0;
      EXPECT_NEAR(bound.value, gap * gap / 16.0, 1e-12);
    }
    EXPECT_NEAR(TvMeanLowerBound(1.0, 2.0, 100, 0.1).value, 0.00625, 1e-15);
  }

  {
    // Support bound vs. the identity route delta*/4 (1 - 2 n eps delta*/t).
    struct Args {
      double t;
      std::int64_t n;
      double eps;
    };
    for (const Args& a :
         std::vector<Args>{{1.0, 100, 0.1}, {2.0, 50, 0.2}}) {
      const double direct = UniformSupportLowerBound(a.t, a.n, a.eps);
      const double mass = a.t / (4.0 * a.n * a.eps);
      EXPECT_NEAR(direct,
                  mass / 4.0 * (1.0 - 2.0 * a.n * a.eps * mass / a.t), 1e-12);
    }
    EXPECT_NEAR(UniformSupportLowerBound(1.0, 100, 0.1), 0.003125, 1e-15);
  }

  {
    // Packing bound vs. a literal transliteration with a loop-summed
    // geometric factor.
    struct Args {
      int m;
      std::int64_t k;
      double eps, delta;
    };
    for (const Args& a : std::vector<Args>{{4, 3, 0.4, 0.01},
                                           {8, 5, 0.15, 1e-4},
                                           {2, 0, 1.0, 0.0}}) {
      double geom = 0.0;
      for (std::int64_t j = 0; j < a.k; ++j) geom += std::exp(-a.eps * j);
      const double shrink = std::exp(-a.eps * a.k);
      const double literal =
          std::max(0.0, (a.m - 1) * (0.5 * shrink - a.delta * geom) /
                            (1.0 + (a.m - 1) * shrink));
      EXPECT_NEAR(PackingLowerBound(a.m, a.k, a.eps, a.delta), literal,
                  1e-12);
    }
  }

  // One-dimensional DP bound delegates to the TV route exactly.
  EXPECT_NEAR(DpMeanLowerBound(1.0, 2.0, 1, 100, 0.1, 0.0).value,
              TvMeanLowerBound(1.0, 2.0, 100, 0.1).value, 1e-15);

  // Density estimation rate, two dimensions.
  EXPECT_NEAR(DensityLowerRate(1, 10000, 1.0),
              std::pow(1e4, -2.0 / 3.0) + std::pow(1e4, -1.0), 1e-12);
  EXPECT_NEAR(DensityLowerRate(2, 500, 0.25),
              std::pow(500.0, -0.5) + std::pow(125.0, -2.0 / 3.0), 1e-12);

  {
    // Gaussian profile against a direct erfc evaluation.
    auto phi = [](double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); };
    const double a = 1.0 / 2.0, b = 1.0;
    EXPECT_NEAR(GaussianDeltaProfile(1.0, 1.0, 1.0),
                phi(a - b) - std::exp(1.0) * phi(-a - b), 1e-12);
    EXPECT_NEAR(GaussianDeltaProfile(1.0, 1.0, 1.0), 0.1269367375066439,
                1e-14);
  }

  {
    // Parameter maps against independent formula transliterations.
    const ChtpParams fwd = ChtpParamsFromDp(0.1, 0.01);
    EXPECT_NEAR(fwd.eps_ch,
                (1.0 + std::exp(-0.1)) * (1.0 - std::exp(-0.2)), 1e-12);
    EXPECT_NEAR(fwd.delta_ch, 0.01 / (std::exp(0.2) - std::exp(0.1)), 1e-12);
    const DpParams back = DpParamsFromChtp(0.3, 0.002);
    EXPECT_NEAR(back.eps, 2.0 * (std::log1p(0.3) - std::log1p(-0.3)), 1e-12);
    EXPECT_NEAR(back.delta, 0.002 * 1.3 / 0.7, 1e-12);
  }
}

}  // namespace
}  // namespace privkit
