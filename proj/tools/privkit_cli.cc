// Copyright 2026 The Privkit Authors. All rights reserved.
// Use of this source code is governed by an Apache-style license that can be
// found in the LICENSE file.
//
// Batch front door. Four subcommands:
//
//   privkit audit    --channel ch.json --definitions pure-dp,chtp ...
//   privkit bench    --config cfg.json --seed S [--out BASE] [--jobs J]
//   privkit bounds   --config cfg.json --seed S [--out report.json]
//   privkit selftest [--seed S] [--inject-fault]
//
// Exit codes: 0 success, 1 a requested verdict or check failed, 2 input
// error (flags, file, schema), 3 enumeration cap exceeded.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "privkit/audit.h"
#include "privkit/bench.h"
#include "privkit/bounds.h"
#include "privkit/divergence.h"
#include "privkit/errors.h"
#include "privkit/histogram.h"
#include "privkit/jsonio.h"
#include "privkit/mechanisms.h"
#include "privkit/rng.h"
#include "privkit/synthetic.h"

namespace {

using nlohmann::json;

json LoadJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("cannot open \"" + path + "\"");
  }
  return json::parse(in);
}

void WriteFile(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::invalid_argument("cannot write \"" + path + "\"");
  }
  out << content;
}

void EmitJson(const json& j, const std::string& out_path) {
  const std::string text = j.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    WriteFile(out_path, text);
  }
}

void RejectUnknown(const json& j, std::initializer_list<const char*> allowed,
                   const std::string& what) {
  if (!j.is_object()) {
    throw std::invalid_argument(what + ": expected an object");
  }
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* key : allowed) {
      if (it.key() == key) {
        known = true;
        break;
      }
    }
    if (!known) {
      throw std::invalid_argument(what + ": unknown field \"" + it.key() +
                                  "\"");
    }
  }
}

std::size_t ResolveCap(long long cap_flag) {
  if (cap_flag < 0) return privkit::kDefaultEnumerationCap;
  if (cap_flag == 0 ||
      static_cast<std::size_t>(cap_flag) > privkit::kDefaultEnumerationCap) {
    throw std::invalid_argument(
        "--cap overrides the enumeration cap downward only");
  }
  return static_cast<std::size_t>(cap_flag);
}

// ---------------------------------------------------------------------------
// audit

struct AuditOptions {
  std::string channel_path;
  std::vector<std::string> definitions;
  double eps = -1.0;
  double delta = 0.0;
  double eps_ch = -1.0;
  double delta_ch = 0.0;
  std::string f_divergence = "tv";
  double f_bound = -1.0;
  std::string metric_path;
  std::string out_path;
  long long cap = -1;
};

privkit::PrivacyDefinition DefinitionFromName(const std::string& name) {
  using privkit::PrivacyDefinition;
  if (name == "pure-dp") return PrivacyDefinition::kPureDp;
  if (name == "approx-dp") return PrivacyDefinition::kApproxDp;
  if (name == "smooth-dp") return PrivacyDefinition::kSmoothDp;
  if (name == "f-divergence") return PrivacyDefinition::kFDivergence;
  if (name == "testing") return PrivacyDefinition::kTesting;
  if (name == "chtp") return PrivacyDefinition::kChtp;
  throw std::invalid_argument("unknown privacy definition \"" + name + "\"");
}

double RequireFlag(double value, const char* flag, const std::string& name) {
  if (value < 0.0) {
    throw std::invalid_argument(std::string(flag) + " is required for " +
                                name);
  }
  return value;
}

int RunAudit(const AuditOptions& opt) {
  const std::size_t cap = ResolveCap(opt.cap);
  const privkit::DiscreteChannel channel =
      privkit::DiscreteChannel::FromJson(LoadJsonFile(opt.channel_path), cap);
  if (opt.definitions.empty()) {
    throw std::invalid_argument("--definitions must name at least one audit");
  }

  json verdicts = json::array();
  bool all_hold = true;
  for (const std::string& name : opt.definitions) {
    privkit::PrivacyVerdict verdict;
    switch (DefinitionFromName(name)) {
      case privkit::PrivacyDefinition::kPureDp:
        verdict = privkit::AuditPureDp(channel,
                                       RequireFlag(opt.eps, "--eps", name));
        break;
      case privkit::PrivacyDefinition::kApproxDp:
        verdict = privkit::AuditApproxDp(
            channel, RequireFlag(opt.eps, "--eps", name), opt.delta);
        break;
      case privkit::PrivacyDefinition::kTesting:
        verdict = privkit::AuditTestingBound(
            channel, RequireFlag(opt.eps, "--eps", name), opt.delta);
        break;
      case privkit::PrivacyDefinition::kSmoothDp: {
        if (opt.metric_path.empty()) {
          throw std::invalid_argument("--metric is required for smooth-dp");
        }
        const privkit::MetricSpec metric =
            privkit::MetricSpec::FromJson(LoadJsonFile(opt.metric_path));
        verdict = privkit::AuditSmoothDp(channel, metric,
                                         RequireFlag(opt.eps, "--eps", name));
        break;
      }
      case privkit::PrivacyDefinition::kFDivergence: {
        privkit::FDivergenceSpec divergence =
            opt.f_divergence == "kl"
                ? privkit::FDivergenceSpec::KullbackLeibler()
                : privkit::FDivergenceSpec::TotalVariation();
        if (opt.f_divergence != "kl" && opt.f_divergence != "tv") {
          throw std::invalid_argument("--f-divergence must be tv or kl");
        }
        verdict = privkit::AuditFPrivacy(
            channel, divergence, RequireFlag(opt.f_bound, "--f-bound", name));
        break;
      }
      case privkit::PrivacyDefinition::kChtp:
        verdict = privkit::AuditChtp(
            channel, RequireFlag(opt.eps_ch, "--eps-ch", name), opt.delta_ch);
        break;
    }
    all_hold = all_hold && verdict.holds;
    verdicts.push_back(verdict.ToJson());
  }
  EmitJson({{"channel", opt.channel_path}, {"verdicts", verdicts}},
           opt.out_path);
  return all_hold ? 0 : 1;
}

// ---------------------------------------------------------------------------
// bench

struct BenchOptions {
  std::string config_path;
  std::uint64_t seed = 0;
  std::string out_base = "bench";
  int jobs = 1;
};

// User-defined sweeps take stream ordinals 256, 257, ...; the rate table
// uses 0..5 internally, so the two can share one master seed.
constexpr std::uint64_t kUserSweepOrdinalBase = 256;

privkit::MechanismSpec MechanismFromConfig(const json& j) {
  // MechanismSpec::FromJson already rejects unknown fields.
  return privkit::MechanismSpec::FromJson(j);
}

privkit::HistogramSpec HistogramFromConfig(const json& j) {
  // HistogramSpec::FromJson already rejects unknown fields.
  return privkit::HistogramSpec::FromJson(j);
}

int RunBench(const BenchOptions& opt) {
  const json config = LoadJsonFile(opt.config_path);
  RejectUnknown(config, {"sweeps", "rate_table", "lemma_suite"},
                "bench config");

  std::vector<privkit::RiskCurve> curves;
  json sweeps_json = json::array();
  if (config.contains("sweeps")) {
    const json& sweeps = config.at("sweeps");
    if (!sweeps.is_array()) {
      throw std::invalid_argument("bench config: \"sweeps\" must be an array");
    }
    for (std::size_t i = 0; i < sweeps.size(); ++i) {
      const json& sweep = sweeps[i];
      const std::uint64_t ordinal = kUserSweepOrdinalBase + i;
      if (!sweep.is_object() || !sweep.contains("kind")) {
        throw std::invalid_argument("sweep: expected {\"kind\": ...}");
      }
      const std::string kind = sweep.at("kind").get<std::string>();
      if (kind == "mean") {
        RejectUnknown(sweep,
                      {"kind", "mechanism", "noise", "family", "n_values",
                       "reps"},
                      "mean sweep");
        const privkit::MechanismSpec spec =
            MechanismFromConfig(sweep.at("mechanism"));
        privkit::NoiseMode mode = privkit::NoiseMode::kPrivate;
        if (sweep.contains("noise")) {
          const std::string noise = sweep.at("noise").get<std::string>();
          if (noise == "no-noise") {
            mode = privkit::NoiseMode::kDiagnosticNoNoise;
          } else if (noise != "private") {
            throw std::invalid_argument(
                "sweep \"noise\" must be private or no-noise");
          }
        }
        const privkit::DistributionFamilySpec family =
            privkit::DistributionFamilySpec::FromJson(sweep.at("family"));
        const std::vector<std::int64_t> n_values =
            sweep.at("n_values").get<std::vector<std::int64_t>>();
        const int reps =
            sweep.contains("reps") ? sweep.at("reps").get<int>() : 1000;
        curves.push_back(privkit::MeanRiskSweep(spec, mode, family, n_values,
                                                reps, opt.seed, opt.jobs,
                                                ordinal));
      } else if (kind == "histogram") {
        RejectUnknown(sweep,
                      {"kind", "histogram", "family", "n", "k_bins_values",
                       "reps"},
                      "histogram sweep");
        const privkit::HistogramSpec spec =
            HistogramFromConfig(sweep.at("histogram"));
        const privkit::DistributionFamilySpec family =
            privkit::DistributionFamilySpec::FromJson(sweep.at("family"));
        const std::int64_t n = sweep.at("n").get<std::int64_t>();
        const std::vector<int> k_bins_values =
            sweep.at("k_bins_values").get<std::vector<int>>();
        const int reps =
            sweep.contains("reps") ? sweep.at("reps").get<int>() : 2000;
        curves.push_back(privkit::HistogramRiskSweep(spec, family, n,
                                                     k_bins_values, reps,
                                                     opt.seed, opt.jobs,
                                                     ordinal));
      } else {
        throw std::invalid_argument("sweep kind must be mean or histogram");
      }
      sweeps_json.push_back(curves.back().ToJson());
    }
  }

  json report;
  report["seed"] = opt.seed;
  report["sweeps"] = std::move(sweeps_json);

  if (config.contains("rate_table")) {
    privkit::RateTableConfig table_config =
        privkit::RateTableConfig::FromJson(config.at("rate_table"));
    table_config.master_seed = opt.seed;
    table_config.jobs = opt.jobs;
    const privkit::RateTableReport table = privkit::RunRateTable(table_config);
    report["rate_table"] = table.ToJson();
    for (const privkit::RateTableRow& row : table.rows) {
      curves.push_back(row.curve);
    }
  } else {
    report["rate_table"] = nullptr;
  }

  if (config.contains("lemma_suite") &&
      config.at("lemma_suite").get<bool>()) {
    report["lemma_suite"] = privkit::TruncationPropertySuite(opt.seed).ToJson();
  } else {
    report["lemma_suite"] = nullptr;
  }

  WriteFile(opt.out_base + ".csv", privkit::RiskCurvesToCsv(curves));
  WriteFile(opt.out_base + ".json", report.dump(2) + "\n");
  return 0;
}

// ---------------------------------------------------------------------------
// bounds

struct BoundsOptions {
  std::string config_path;
  std::uint64_t seed = 0;
  std::string out_path;
  long long cap = -1;
};

json EvaluatorTable() {
  json table = json::array();
  const privkit::TvMeanBound tv_bound =
      privkit::TvMeanLowerBound(1.0, 2.0, 100, 0.1);
  table.push_back({{"name", "tv_mean_lower_bound"},
                   {"args", {1.0, 2.0, 100, 0.1}},
                   {"value", privkit::JsonNumber(tv_bound.value)}});
  table.push_back({{"name", "uniform_support_lower_bound"},
                   {"args", {1.0, 100, 0.1}},
                   {"value", privkit::JsonNumber(
                                 privkit::UniformSupportLowerBound(1.0, 100,
                                                                   0.1))}});
  table.push_back({{"name", "packing_lower_bound"},
                   {"args", {2, 0, 1.0, 0.0}},
                   {"value", privkit::JsonNumber(
                                 privkit::PackingLowerBound(2, 0, 1.0, 0.0))}});
  const privkit::DpMeanBound dp_bound =
      privkit::DpMeanLowerBound(1.0, 2.0, 4, 100, 0.5, 1e-6);
  table.push_back({{"name", "dp_mean_lower_bound"},
                   {"args", {1.0, 2.0, 4, 100, 0.5, 1e-6}},
                   {"value", privkit::JsonNumber(dp_bound.value)},
                   {"asymptotic", privkit::JsonNumber(dp_bound.asymptotic)}});
  table.push_back({{"name", "density_lower_rate"},
                   {"args", {1, 10000, 1.0}},
                   {"value", privkit::JsonNumber(
                                 privkit::DensityLowerRate(1, 10000, 1.0))}});
  return {{"check", "evaluators"}, {"table", table}};
}

int RunBounds(const BoundsOptions& opt) {
  const std::size_t cap = ResolveCap(opt.cap);
  json config = json::object();
  if (!opt.config_path.empty()) config = LoadJsonFile(opt.config_path);
  RejectUnknown(config, {"contraction", "mass_everywhere", "evaluators"},
                "bounds config");

  json checks = json::array();
  bool any_violation = false;

  {
    json section = config.value("contraction", json::object());
    RejectUnknown(section,
                  {"instances", "alphabet_size", "n", "output_size", "eps"},
                  "contraction config");
    const int instances = section.value("instances", 40);
    const int alphabet_size = section.value("alphabet_size", 2);
    const int n = section.value("n", 2);
    const int output_size = section.value("output_size", 3);
    const double eps = section.value("eps", 0.2);
    if (instances < 0) throw std::invalid_argument("instances must be >= 0");
    json violations = json::array();
    double max_slack = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < instances; ++i) {
      privkit::RngStream rng(opt.seed, static_cast<std::uint64_t>(i));
      privkit::DiscreteChannel raw = privkit::RandomChannel(
          alphabet_size, n, output_size, &rng, cap);
      // Mixing toward the constant channel caps every neighboring TV at
      // 1 - weight.
      privkit::DiscreteChannel channel =
          privkit::MixWithUniform(raw, 1.0 - eps);
      privkit::FiniteDistribution p0 =
          privkit::RandomDistribution(channel.input_alphabet(), &rng);
      privkit::FiniteDistribution p1 =
          privkit::RandomDistribution(channel.input_alphabet(), &rng);
      const privkit::ContractionReport report =
          privkit::VerifyContraction(channel, p0, p1, cap);
      max_slack = std::max(max_slack,
                           report.marginal_tv - report.bound.value);
      if (!report.holds) {
        violations.push_back({{"instance", i}, {"report", report.ToJson()}});
      }
    }
    any_violation = any_violation || !violations.empty();
    checks.push_back({{"check", "contraction"},
                      {"instances", instances},
                      {"violations", violations},
                      {"max_slack_used", privkit::JsonNumber(max_slack)}});
  }

  {
    json section = config.value("mass_everywhere", json::object());
    RejectUnknown(section,
                  {"instances", "alphabet_size", "n", "output_size", "p"},
                  "mass_everywhere config");
    const int instances = section.value("instances", 20);
    const int alphabet_size = section.value("alphabet_size", 3);
    const int n = section.value("n", 2);
    const int output_size = section.value("output_size", 3);
    const double p = section.value("p", 0.5);
    if (alphabet_size < 3) {
      throw std::invalid_argument(
          "mass_everywhere needs alphabet_size >= 3 (base and two atoms)");
    }
    json violations = json::array();
    double max_slack = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < instances; ++i) {
      privkit::RngStream rng(opt.seed, 0x10000ULL + i);
      privkit::DiscreteChannel channel = privkit::RandomChannel(
          alphabet_size, n, output_size, &rng, cap);
      const double eps = privkit::TightPureDpEpsilon(channel);
      const privkit::MassEverywhereReport report =
          privkit::VerifyMassEverywhere(channel, eps, p, 0, 1, 2, cap);
      max_slack = std::max(max_slack, -report.min_slack);
      if (!report.holds) {
        violations.push_back({{"instance", i}, {"report", report.ToJson()}});
      }
    }
    any_violation = any_violation || !violations.empty();
    checks.push_back({{"check", "mass-everywhere"},
                      {"instances", instances},
                      {"violations", violations},
                      {"max_slack_used", privkit::JsonNumber(max_slack)}});
  }

  if (config.value("evaluators", true)) {
    checks.push_back(EvaluatorTable());
  }

  EmitJson({{"seed", opt.seed}, {"checks", checks}}, opt.out_path);
  return any_violation ? 1 : 0;
}

// ---------------------------------------------------------------------------
// selftest

struct SelftestOptions {
  std::uint64_t seed = 20260819;
  bool inject_fault = false;
};

int RunSelftest(const SelftestOptions& opt) {
  int passed = 0, total = 0;
  auto record = [&](const std::string& name, bool ok, const std::string& detail) {
    ++total;
    if (ok) ++passed;
    std::cout << name << ": " << (ok ? "PASS" : "FAIL");
    if (!detail.empty()) std::cout << " (" << detail << ")";
    std::cout << "\n";
  };

  {
    // Two arithmetic routes to the same tight approximate-DP level.
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
      privkit::RngStream rng(opt.seed, 0x100ULL + i);
      privkit::DiscreteChannel channel =
          privkit::RandomChannel(2 + i % 2, 1 + i % 2, 2 + i % 3, &rng);
      for (double eps : {0.0, 0.1, 0.5}) {
        double hockey = privkit::TightApproxDpDelta(channel, eps);
        const double testing = privkit::TightTestingDelta(channel, eps);
        if (opt.inject_fault && i == 0) hockey += 1e-6;
        worst = std::max(worst, std::fabs(hockey - testing));
      }
    }
    std::ostringstream detail;
    detail << "max |route difference| = " << worst;
    record("hockey-stick-vs-testing", worst <= 1e-9, detail.str());
  }

  {
    // The converse-direction parameter map inverts the witness map exactly.
    double worst = 0.0;
    for (double eps = 0.05; eps <= 0.45; eps += 0.05) {
      for (double delta : {0.0, 1e-3}) {
        const privkit::ChtpParams fwd{std::tanh(eps / 4.0),
                                      delta * std::exp(-eps / 2.0)};
        const privkit::DpParams back =
            privkit::DpParamsFromChtp(fwd.eps_ch, fwd.delta_ch);
        worst = std::max(worst, std::fabs(back.eps - eps));
        worst = std::max(worst, std::fabs(back.delta - delta));
        const privkit::ChtpParams stated = privkit::ChtpParamsFromDp(eps, delta);
        if (!(stated.eps_ch > 0.0) || stated.delta_ch < 0.0) {
          worst = std::max(worst, 1.0);
        }
      }
    }
    std::ostringstream detail;
    detail << "max round-trip error = " << worst;
    record("conditional-test-round-trip", worst <= 1e-9, detail.str());
  }

  {
    double worst = -std::numeric_limits<double>::infinity();
    const std::vector<std::string> outcomes = {"a", "b", "c", "d"};
    for (int i = 0; i < 50; ++i) {
      privkit::RngStream rng(opt.seed, 0x200ULL + i);
      const privkit::FiniteDistribution p =
          privkit::RandomDistribution(outcomes, &rng);
      const privkit::FiniteDistribution q =
          privkit::RandomDistribution(outcomes, &rng);
      const double tv = privkit::TvDistance(p, q);
      const double kl = privkit::KlDivergence(p, q);
      worst = std::max(worst, tv - std::sqrt(kl / 2.0));
    }
    std::ostringstream detail;
    detail << "max TV - sqrt(KL/2) = " << worst;
    record("pinsker", worst <= 1e-12, detail.str());
  }

  {
    int violations = 0;
    for (int i = 0; i < 20; ++i) {
      privkit::RngStream rng(opt.seed, 0x300ULL + i);
      privkit::DiscreteChannel channel = privkit::MixWithUniform(
          privkit::RandomChannel(2, 2, 3, &rng), 0.8);
      const privkit::FiniteDistribution p0 =
          privkit::RandomDistribution(channel.input_alphabet(), &rng);
      const privkit::FiniteDistribution p1 =
          privkit::RandomDistribution(channel.input_alphabet(), &rng);
      if (!privkit::VerifyContraction(channel, p0, p1).holds) ++violations;
    }
    std::ostringstream detail;
    detail << violations << " violations in 20 instances";
    record("contraction-sweep", violations == 0, detail.str());
  }

  {
    const privkit::LemmaSuiteReport report =
        privkit::TruncationPropertySuite(opt.seed);
    int failed = 0;
    for (const privkit::LemmaCaseResult& c : report.cases) {
      if (!c.holds) ++failed;
    }
    std::ostringstream detail;
    detail << failed << " of " << report.cases.size() << " cases failed";
    record("truncation-lemmas", report.holds, detail.str());
  }

  std::cout << "selftest: " << passed << "/" << total << " checks passed\n";
  return passed == total ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"privacy definition auditor and risk benchmark"};
  app.require_subcommand(1);

  AuditOptions audit_opt;
  CLI::App* audit = app.add_subcommand("audit", "audit a serialized channel");
  audit->add_option("--channel", audit_opt.channel_path, "channel JSON file")
      ->required();
  audit
      ->add_option("--definitions", audit_opt.definitions,
                   "comma-separated definitions (pure-dp, approx-dp, "
                   "smooth-dp, f-divergence, testing, chtp)")
      ->required()
      ->delimiter(',');
  audit->add_option("--eps", audit_opt.eps, "epsilon level");
  audit->add_option("--delta", audit_opt.delta, "delta level");
  audit->add_option("--eps-ch", audit_opt.eps_ch,
                    "conditional-test epsilon level");
  audit->add_option("--delta-ch", audit_opt.delta_ch,
                    "conditional-test event-mass floor");
  audit->add_option("--f-divergence", audit_opt.f_divergence,
                    "f-divergence to audit: tv or kl");
  audit->add_option("--f-bound", audit_opt.f_bound, "f-divergence bound");
  audit->add_option("--metric", audit_opt.metric_path,
                    "dataset metric JSON file (smooth-dp)");
  audit->add_option("--out", audit_opt.out_path, "verdict file (default stdout)");
  audit->add_option("--cap", audit_opt.cap,
                    "enumeration cap override (downward only)");

  BenchOptions bench_opt;
  CLI::App* bench = app.add_subcommand("bench", "run Monte Carlo risk sweeps");
  bench->add_option("--config", bench_opt.config_path, "bench config JSON")
      ->required();
  bench->add_option("--seed", bench_opt.seed, "master seed")->required();
  bench->add_option("--out", bench_opt.out_base,
                    "output base path (writes BASE.csv and BASE.json)");
  bench->add_option("--jobs", bench_opt.jobs, "worker threads")
      ->check(CLI::PositiveNumber);

  BoundsOptions bounds_opt;
  CLI::App* bounds = app.add_subcommand(
      "bounds", "verify lower-bound inequalities on random instances");
  bounds->add_option("--config", bounds_opt.config_path, "bounds config JSON");
  bounds->add_option("--seed", bounds_opt.seed, "master seed")->required();
  bounds->add_option("--out", bounds_opt.out_path,
                     "report file (default stdout)");
  bounds->add_option("--cap", bounds_opt.cap,
                     "enumeration cap override (downward only)");

  SelftestOptions selftest_opt;
  CLI::App* selftest =
      app.add_subcommand("selftest", "run the built-in invariant suite");
  selftest->add_option("--seed", selftest_opt.seed, "master seed");
  selftest->add_flag("--inject-fault", selftest_opt.inject_fault,
                     "deliberately corrupt one check (must fail)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  try {
    if (*audit) return RunAudit(audit_opt);
    if (*bench) return RunBench(bench_opt);
    if (*bounds) return RunBounds(bounds_opt);
    if (*selftest) return RunSelftest(selftest_opt);
    return 2;
  } catch (const privkit::ResourceCapError& e) {
    std::cerr << "resource cap: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
