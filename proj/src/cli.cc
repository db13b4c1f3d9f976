//
// Copyright 2026 The l2mech Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "l2mech/cli.h"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <fstream>
#include <functional>
#include <sstream>

#include "CLI11.hpp"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "absl/strings/str_replace.h"
#include "json.hpp"
#include "l2mech/calibrate.h"
#include "l2mech/errormodel.h"
#include "l2mech/io.h"
#include "l2mech/lossbounds.h"
#include "l2mech/mcverify.h"
#include "l2mech/sampler.h"

namespace l2mech {
namespace {

constexpr int64_t kDefaultVerifySamples = 100000;
constexpr int kBenchDraws = 1000;

// Raw flag values. Presence is tracked separately so that validation can
// report missing flags alongside bad ones.
struct RawFlags {
  double epsilon = 0;
  double delta = 0;
  int dim = 0;
  std::string mechanism = "l2";
  int n_r = 1000;
  int n_R = 1000;
  double tol = 0.001;
  int64_t samples = 0;
  uint64_t seed = 0;
  std::string format = "json";
  std::string out;
  double sigma = 0;
  int trials = 100;
};

struct Flags {
  bool eps = false, delta = false, dim = false, mech = false, grid = false,
       tol = false, samples = false, seed = false, sigma = false,
       trials = false;
};

CLI::Option* Add(CLI::App& app, const std::string& name, auto& target,
                 const std::string& help) {
  return app.add_option(name, target, help);
}

void AddFlags(CLI::App& app, const Flags& flags, RawFlags& raw) {
  if (flags.mech) Add(app, "--mech", raw.mechanism, "l2, laplace or gaussian");
  if (flags.eps) Add(app, "--eps", raw.epsilon, "privacy parameter epsilon");
  if (flags.delta) Add(app, "--delta", raw.delta, "privacy parameter delta");
  if (flags.dim) Add(app, "--dim", raw.dim, "dimension (compare: maximum)");
  if (flags.grid) {
    Add(app, "--nr", raw.n_r, "radii in the first-term grid");
    Add(app, "--nR", raw.n_R, "radii in the second-term grid");
  }
  if (flags.tol) Add(app, "--tol", raw.tol, "sigma search tolerance");
  if (flags.samples) Add(app, "--samples", raw.samples, "number of draws");
  if (flags.seed) Add(app, "--seed", raw.seed, "RNG seed (else L2MECH_SEED)");
  if (flags.sigma) Add(app, "--sigma", raw.sigma, "noise scale");
  if (flags.trials) Add(app, "--trials", raw.trials, "timing trials per cell");
  Add(app, "--format", raw.format, "json or csv");
  Add(app, "--out", raw.out, "output file (default stdout)");
}

std::string OneLine(std::string message) {
  return absl::StrReplaceAll(message, {{"\r", " "}, {"\n", " "}});
}

bool Given(const CLI::App& app, const std::string& name) {
  const CLI::Option* opt = app.get_option_no_throw(name);
  return opt != nullptr && opt->count() > 0;
}

}  // namespace

absl::StatusOr<CliConfig> ParseArgs(const std::vector<std::string>& args,
                                    std::optional<std::string> env_seed) {
  CLI::App app("l2 mechanism calibration, sampling and verification", "l2mech");
  app.require_subcommand(1);
  RawFlags raw;
  struct Sub {
    Command command;
    const char* name;
    const char* help;
    Flags flags;
  };
  const Sub subs[] = {
      {Command::kCalibrate, "calibrate", "smallest certified noise scale",
       {.eps = true, .delta = true, .dim = true, .mech = true, .grid = true,
        .tol = true}},
      {Command::kCompare, "compare", "mse of all mechanisms for d = 1..dim",
       {.eps = true, .delta = true, .dim = true, .grid = true, .tol = true}},
      {Command::kSample, "sample", "draw noisy vectors around the origin",
       {.dim = true, .mech = true, .samples = true, .seed = true,
        .sigma = true}},
      {Command::kVerify, "verify", "empirical and analytic privacy of l2 noise",
       {.eps = true, .delta = true, .dim = true, .grid = true, .tol = true,
        .samples = true, .seed = true, .sigma = true}},
      {Command::kBench, "bench", "wall-clock cost of calibration and sampling",
       {.eps = true, .delta = true, .dim = true, .grid = true, .tol = true,
        .trials = true}},
  };
  std::vector<CLI::App*> apps;
  for (const Sub& sub : subs) {
    CLI::App* sub_app = app.add_subcommand(sub.name, sub.help);
    AddFlags(*sub_app, sub.flags, raw);
    apps.push_back(sub_app);
  }

  std::vector<const char*> argv = {"l2mech"};
  for (const std::string& arg : args) argv.push_back(arg.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    CliConfig help;
    help.help_text = app.help();
    return help;
  } catch (const CLI::ExtrasError&) {
    std::vector<std::string> extras;
    for (const CLI::App* sub_app : apps) {
      for (const std::string& arg : sub_app->remaining()) {
        extras.push_back(arg);
      }
    }
    for (const std::string& arg : app.remaining()) extras.push_back(arg);
    return absl::InvalidArgumentError(
        absl::StrCat("unexpected arguments: ", absl::StrJoin(extras, " ")));
  } catch (const CLI::ParseError& e) {
    return absl::InvalidArgumentError(OneLine(e.what()));
  }

  int index = 0;
  while (!apps[index]->parsed()) ++index;
  const Sub& sub = subs[index];
  const CLI::App& used = *apps[index];
  CliConfig config;
  config.command = sub.command;
  std::vector<std::string> violations;
  auto require = [&](bool wanted, const char* flag) {
    if (wanted && !Given(used, flag)) {
      violations.push_back(absl::StrCat("missing required flag ", flag));
      return false;
    }
    return wanted;
  };

  if (require(sub.flags.eps, "--eps")) {
    config.epsilon = raw.epsilon;
    if (!(raw.epsilon > 0) || !std::isfinite(raw.epsilon)) {
      violations.push_back("epsilon must be positive");
    }
  }
  if (require(sub.flags.delta, "--delta")) {
    config.delta = raw.delta;
    if (!(raw.delta > 0 && raw.delta < 1)) {
      violations.push_back("delta must be in (0,1)");
    }
  }
  if (require(sub.flags.dim, "--dim")) {
    config.dim = raw.dim;
    if (raw.dim < 1) violations.push_back("dim must be at least 1");
  }
  if (sub.flags.mech) {
    absl::StatusOr<Mechanism> mechanism = ParseMechanism(raw.mechanism);
    if (mechanism.ok()) {
      config.mechanism = *mechanism;
    } else {
      violations.push_back("mech must be one of l2, laplace, gaussian");
    }
  }
  if (sub.flags.grid) {
    config.n_r = raw.n_r;
    config.n_R = raw.n_R;
    if (raw.n_r < 2) violations.push_back("nr must be at least 2");
    if (raw.n_R < 2) violations.push_back("nR must be at least 2");
    if (sub.command == Command::kCalibrate &&
        config.mechanism != Mechanism::kL2 &&
        (Given(used, "--nr") || Given(used, "--nR"))) {
      violations.push_back("nr and nR apply only to --mech l2");
    }
  }
  if (sub.flags.tol) {
    config.tol = raw.tol;
    if (!(raw.tol > 0 && raw.tol < 1)) {
      violations.push_back("tol must be in (0,1)");
    }
  }
  if (sub.command == Command::kSample) {
    if (require(true, "--samples")) {
      config.samples = raw.samples;
      if (raw.samples < 1 || raw.samples > std::numeric_limits<int>::max()) {
        violations.push_back("samples must be in [1, 2147483647]");
      }
    }
  } else if (sub.flags.samples) {
    config.samples = Given(used, "--samples") ? raw.samples
                                              : kDefaultVerifySamples;
    if (config.samples < 1) violations.push_back("samples must be positive");
  }
  if (sub.flags.sigma && Given(used, "--sigma")) {
    config.sigma = raw.sigma;
    if (!(raw.sigma > 0) || !std::isfinite(raw.sigma)) {
      violations.push_back("sigma must be positive");
    }
  } else if (sub.command == Command::kSample) {
    require(true, "--sigma");
  }
  if (sub.flags.seed) {
    if (Given(used, "--seed")) {
      config.seed = raw.seed;
    } else if (env_seed.has_value()) {
      const std::string& text = *env_seed;
      auto [end, ec] =
          std::from_chars(text.data(), text.data() + text.size(), config.seed);
      if (ec != std::errc() || end != text.data() + text.size() ||
          text.empty()) {
        violations.push_back("L2MECH_SEED must be an unsigned 64-bit integer");
      }
    }
  }
  if (sub.flags.trials) {
    config.trials = raw.trials;
    if (raw.trials < 1) violations.push_back("trials must be positive");
  }
  if (raw.format == "json") {
    config.output_format = OutputFormat::kJson;
  } else if (raw.format == "csv") {
    config.output_format = OutputFormat::kCsv;
  } else {
    violations.push_back("format must be json or csv");
  }
  if (sub.command == Command::kVerify &&
      config.output_format == OutputFormat::kCsv) {
    violations.push_back("verify supports only --format json");
  }
  if (!raw.out.empty()) config.output_path = raw.out;

  if (!violations.empty()) {
    return absl::InvalidArgumentError(absl::StrJoin(violations, "; "));
  }
  return config;
}

namespace {

CheckOptions GridOptions(const CliConfig& config) {
  CheckOptions options;
  options.n_r = config.n_r;
  options.n_R = config.n_R;
  return options;
}

absl::StatusOr<CalibrationResult> Calibrate(Mechanism mechanism,
                                            const CliConfig& config,
                                            const PrivacyParams& params) {
  switch (mechanism) {
    case Mechanism::kL2:
      return CalibrateL2(config.dim, params, GridOptions(config), config.tol);
    case Mechanism::kLaplace:
      return LaplaceScale(config.dim, params);
    case Mechanism::kGaussian:
      return CalibrateGaussian(params, config.tol);
  }
  return absl::InternalError("unknown mechanism");
}

std::string CsvOf(const nlohmann::json& row,
                  const std::vector<std::string>& columns) {
  std::string out = CsvRecord(columns);
  std::vector<std::string> fields;
  for (const std::string& column : columns) {
    const nlohmann::json& v = row.at(column);
    if (v.is_null()) {
      fields.push_back("");
    } else if (v.is_string()) {
      fields.push_back(v.get<std::string>());
    } else if (v.is_number_float()) {
      fields.push_back(FormatDouble(v.get<double>()));
    } else {
      fields.push_back(v.dump());
    }
  }
  return out + CsvRecord(fields);
}

absl::StatusOr<std::string> RunCalibrate(const CliConfig& config,
                                         const PrivacyParams& params) {
  absl::StatusOr<CalibrationResult> result =
      Calibrate(config.mechanism, config, params);
  if (!result.ok()) return result.status();
  nlohmann::json doc = CalibrationToJson(*result, config.dim, params);
  if (config.output_format == OutputFormat::kCsv) {
    return CsvOf(doc, {"mechanism", "dim", "epsilon", "delta", "sigma",
                       "pure_epsilon", "search_iterations", "tolerance",
                       "hit_bracket_floor"});
  }
  return doc.dump(2) + "\n";
}

absl::StatusOr<std::string> RunCompare(const CliConfig& config,
                                       const PrivacyParams& params) {
  absl::StatusOr<std::vector<ErrorRow>> rows =
      ComparisonTable(params, config.dim, GridOptions(config), config.tol);
  if (!rows.ok()) return rows.status();
  if (config.output_format == OutputFormat::kCsv) return ErrorRowsToCsv(*rows);
  return ErrorRowsToJson(*rows).dump(2) + "\n";
}

absl::StatusOr<std::string> RunSample(const CliConfig& config) {
  absl::StatusOr<SampleBatch> batch =
      DrawBatch(config.mechanism, config.dim, *config.sigma,
                static_cast<int>(config.samples), config.seed);
  if (!batch.ok()) return batch.status();
  if (config.output_format == OutputFormat::kCsv) {
    return SampleBatchToCsv(*batch);
  }
  return SampleBatchToJson(*batch).dump(2) + "\n";
}

absl::StatusOr<std::string> RunVerify(const CliConfig& config,
                                      const PrivacyParams& params) {
  double sigma;
  nlohmann::json calibration = nullptr;
  if (config.sigma.has_value()) {
    sigma = *config.sigma;
  } else {
    absl::StatusOr<CalibrationResult> result =
        CalibrateL2(config.dim, params, GridOptions(config), config.tol);
    if (!result.ok()) return result.status();
    sigma = result->sigma;
    calibration = CalibrationToJson(*result, config.dim, params);
  }
  absl::StatusOr<EmpiricalPrivacyEstimate> estimate = EmpiricalLhs(
      config.dim, sigma, params.epsilon(), config.samples, config.seed);
  if (!estimate.ok()) return estimate.status();
  nlohmann::json analytic;
  absl::StatusOr<BoundReport> report =
      CheckApproximateDp(config.dim, sigma, params, GridOptions(config));
  if (report.ok()) {
    analytic = BoundReportToJson(*report);
  } else if (absl::IsOutOfRange(report.status())) {
    // The tail radius falls inside the inner ball; no bound exists.
    analytic = nullptr;
  } else {
    return report.status();
  }
  nlohmann::json doc = {{"delta", params.delta()},
                        {"empirical", EstimateToJson(*estimate)},
                        {"analytic", analytic},
                        {"calibration", calibration}};
  return doc.dump(2) + "\n";
}

double Median(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  size_t n = values.size();
  return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

absl::StatusOr<std::string> RunBench(const CliConfig& config,
                                     const PrivacyParams& params) {
  using Clock = std::chrono::steady_clock;
  struct Cell {
    Mechanism mechanism;
    std::string operation;
    double mean = 0;
    double median = 0;
  };
  std::vector<Cell> cells;
  for (Mechanism mechanism :
       {Mechanism::kL2, Mechanism::kLaplace, Mechanism::kGaussian}) {
    std::vector<double> calibrate_seconds, sample_seconds;
    for (int t = 0; t < config.trials; ++t) {
      Clock::time_point start = Clock::now();
      absl::StatusOr<CalibrationResult> result =
          Calibrate(mechanism, config, params);
      Clock::time_point mid = Clock::now();
      if (!result.ok()) return result.status();
      absl::StatusOr<SampleBatch> batch =
          DrawBatch(mechanism, config.dim, result->sigma, kBenchDraws,
                    static_cast<uint64_t>(t));
      Clock::time_point end = Clock::now();
      if (!batch.ok()) return batch.status();
      calibrate_seconds.push_back(
          std::chrono::duration<double>(mid - start).count());
      sample_seconds.push_back(
          std::chrono::duration<double>(end - mid).count());
    }
    auto cell = [&](const std::string& op, const std::vector<double>& v) {
      double sum = 0;
      for (double x : v) sum += x;
      cells.push_back({mechanism, op, sum / v.size(), Median(v)});
    };
    cell("sigma", calibrate_seconds);
    cell(absl::StrCat("sample_", kBenchDraws), sample_seconds);
  }
  if (config.output_format == OutputFormat::kCsv) {
    std::string out = CsvRecord({"mechanism", "operation", "dim", "trials",
                                 "mean_seconds", "median_seconds",
                                 "deterministic"});
    for (const Cell& c : cells) {
      out += CsvRecord({std::string(MechanismName(c.mechanism)), c.operation,
                        absl::StrCat(config.dim), absl::StrCat(config.trials),
                        FormatDouble(c.mean), FormatDouble(c.median),
                        "false"});
    }
    return out;
  }
  nlohmann::json rows = nlohmann::json::array();
  for (const Cell& c : cells) {
    rows.push_back({{"mechanism", MechanismName(c.mechanism)},
                    {"operation", c.operation},
                    {"mean_seconds", c.mean},
                    {"median_seconds", c.median}});
  }
  nlohmann::json doc = {{"deterministic", false},
                        {"note", "wall-clock timings vary run to run"},
                        {"dim", config.dim},
                        {"epsilon", params.epsilon()},
                        {"delta", params.delta()},
                        {"trials", config.trials},
                        {"rows", std::move(rows)}};
  return doc.dump(2) + "\n";
}

}  // namespace

int Run(const CliConfig& config, std::ostream& out, std::ostream& err) {
  if (config.help_text.has_value()) {
    out << *config.help_text;
    return 0;
  }
  absl::StatusOr<std::string> artifact;
  if (config.command == Command::kSample) {
    artifact = RunSample(config);
  } else {
    absl::StatusOr<PrivacyParams> params =
        PrivacyParams::Create(config.epsilon, config.delta);
    if (!params.ok()) {
      err << "error: " << OneLine(std::string(params.status().message()))
          << "\n";
      return 2;
    }
    switch (config.command) {
      case Command::kCalibrate:
        artifact = RunCalibrate(config, *params);
        break;
      case Command::kCompare:
        artifact = RunCompare(config, *params);
        break;
      case Command::kVerify:
        artifact = RunVerify(config, *params);
        break;
      case Command::kBench:
        artifact = RunBench(config, *params);
        break;
      case Command::kSample:
        break;
    }
  }
  if (!artifact.ok()) {
    err << "error: " << OneLine(std::string(artifact.status().message()))
        << "\n";
    return 1;
  }
  if (config.output_path.has_value()) {
    std::ofstream file(*config.output_path, std::ios::binary);
    file << *artifact;
    if (!file) {
      err << "error: cannot write " << *config.output_path << "\n";
      return 2;
    }
    return 0;
  }
  out << *artifact;
  out.flush();
  return 0;
}

int Main(const std::vector<std::string>& args,
         std::optional<std::string> env_seed, std::ostream& out,
         std::ostream& err) {
  absl::StatusOr<CliConfig> config = ParseArgs(args, std::move(env_seed));
  if (!config.ok()) {
    err << "error: " << config.status().message() << "\n";
    return 2;
  }
  return Run(*config, out, err);
}

}  // namespace l2mech
