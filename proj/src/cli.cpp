// Copyright 2026 The qteleport Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qteleport/cli.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

namespace qteleport {

namespace {

constexpr double kInputNormSlack = 1e-6;

double tolerance_from_env() {
  const char* raw = std::getenv("QTELEPORT_TOL");
  if (raw == nullptr) return 1e-10;
  double value = 0.0;
  const char* end = raw + std::string_view(raw).size();
  const auto res = std::from_chars(raw, end, value);
  if (res.ec != std::errc{} || res.ptr != end || !std::isfinite(value) ||
      value < 0.0)
    throw UsageError("QTELEPORT_TOL must be a finite nonnegative number");
  return value;
}

void write_output(const std::string& text,
                  const std::optional<std::string>& path) {
  if (!path) {
    std::cout << text;
    return;
  }
  std::ofstream out(*path, std::ios::binary);
  if (!out) throw IoError("cannot open output file: " + *path);
  out << text;
  out.flush();
  if (!out) throw IoError("failed writing output file: " + *path);
}

PremeasurementSpec resolve_spec(const CliConfig& config) {
  if (config.chi_file) return load_chi_spec(*config.chi_file);
  return lueders_spec();
}

int dispatch(const CliConfig& config) {
  const double tolerance = tolerance_from_env();

  switch (config.command) {
    case Command::kRun: {
      const QubitState phi(config.a, config.b);
      const ProtocolReport report =
          run_protocol(phi, resolve_spec(config), config.theta);
      const std::vector<CheckResult> checks =
          coverage_report(report, tolerance);
      write_output(report_json(report, checks, tolerance), config.out);
      for (const CheckResult& c : checks)
        if (!c.passed) return 1;
      return 0;
    }
    case Command::kSweepTheta: {
      const QubitState phi(config.a, config.b);
      const PremeasurementSpec spec = resolve_spec(config);
      const ThetaSweep sweep =
          sweep_theta(phi, spec, *config.points, spec.label);
      write_output(config.format == "json" ? sweep_json(sweep, tolerance)
                                           : sweep_csv(sweep.rows),
                   config.out);
      return 0;
    }
    case Command::kRandomTrials: {
      const TrialSummary summary =
          random_trials(*config.trials, config.seed, config.randomize_chi);
      write_output(config.format == "json" ? trials_json(summary, tolerance)
                                           : trials_csv(summary),
                   config.out);
      return 0;
    }
    case Command::kShowState: {
      const QubitState phi(config.a, config.b);
      const ProtocolReport report =
          run_protocol(phi, resolve_spec(config), config.theta);
      write_output(show_state_text(report), config.out);
      return 0;
    }
  }
  throw UsageError("unknown command");
}

}  // namespace

CliConfig parse_args(const std::vector<std::string>& argv) {
  CLI::App app{"Unitary teleportation protocol simulator"};
  app.name("qteleport");
  app.require_subcommand(1);

  double a_re = 0.0, a_im = 0.0, b_re = 0.0, b_im = 0.0;
  std::optional<double> theta;
  int points = 0;
  int trials = 0;
  std::uint64_t seed = 0;
  bool randomize_chi = false;
  std::string chi_file, out_path, format;

  const auto add_state_options = [&](CLI::App* cmd) {
    cmd->add_option("--a-re", a_re, "real part of the |+> amplitude");
    cmd->add_option("--a-im", a_im, "imaginary part of the |+> amplitude");
    cmd->add_option("--b-re", b_re, "real part of the |-> amplitude");
    cmd->add_option("--b-im", b_im, "imaginary part of the |-> amplitude");
  };
  const auto add_chi_option = [&](CLI::App* cmd) {
    cmd->add_option("--chi-file", chi_file,
                    "JSON file with four premeasurement target vectors");
  };
  const auto add_out_option = [&](CLI::App* cmd) {
    cmd->add_option("--out", out_path, "output file (default: stdout)");
  };
  const auto add_format_option = [&](CLI::App* cmd) {
    cmd->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"json", "csv"}));
  };

  CLI::App* run = app.add_subcommand(
      "run", "run one protocol pass and report every derived quantity");
  add_state_options(run);
  run->add_option("--theta", theta, "perturbation angle in radians");
  add_chi_option(run);
  add_out_option(run);
  add_format_option(run);

  CLI::App* sweep = app.add_subcommand(
      "sweep-theta", "tabulate fidelities on a uniform theta grid");
  add_state_options(sweep);
  sweep->add_option("--points", points, "number of grid points")->required();
  add_chi_option(sweep);
  add_out_option(sweep);
  add_format_option(sweep);

  CLI::App* rand_trials = app.add_subcommand(
      "random-trials", "teleport Haar-random states and summarize");
  rand_trials->add_option("--trials", trials, "number of trials")->required();
  rand_trials->add_option("--seed", seed, "random seed");
  rand_trials->add_flag("--randomize-chi", randomize_chi,
                        "draw random non-orthogonal target vectors");
  add_out_option(rand_trials);
  add_format_option(rand_trials);

  CLI::App* show = app.add_subcommand(
      "show-state", "print the 32 labeled amplitudes of both total states");
  add_state_options(show);
  show->add_option("--theta", theta, "perturbation angle in radians");
  add_chi_option(show);
  add_out_option(show);

  std::vector<const char*> c_argv;
  c_argv.reserve(argv.size());
  for (const std::string& arg : argv) c_argv.push_back(arg.c_str());
  try {
    app.parse(static_cast<int>(c_argv.size()), c_argv.data());
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested{app.help()};
  } catch (const CLI::CallForAllHelp&) {
    throw HelpRequested{app.help("", CLI::AppFormatMode::All)};
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  CliConfig config;
  if (app.got_subcommand(run)) config.command = Command::kRun;
  if (app.got_subcommand(sweep)) config.command = Command::kSweepTheta;
  if (app.got_subcommand(rand_trials)) config.command = Command::kRandomTrials;
  if (app.got_subcommand(show)) config.command = Command::kShowState;

  config.theta = theta;
  config.seed = seed;
  config.randomize_chi = randomize_chi;
  if (!chi_file.empty()) config.chi_file = chi_file;
  if (!out_path.empty()) config.out = out_path;

  switch (config.command) {
    case Command::kRun:
      config.format = format.empty() ? "json" : format;
      if (config.format != "json")
        throw UsageError("run emits a JSON report; --format csv is not "
                         "available");
      break;
    case Command::kSweepTheta:
      if (points < 2) throw UsageError("--points must be >= 2");
      config.points = points;
      config.format = format.empty() ? "csv" : format;
      break;
    case Command::kRandomTrials:
      if (trials < 1) throw UsageError("--trials must be >= 1");
      config.trials = trials;
      config.format = format.empty() ? "json" : format;
      break;
    case Command::kShowState:
      config.format = "text";
      break;
  }

  if (config.command != Command::kRandomTrials) {
    const Complex a(a_re, a_im), b(b_re, b_im);
    const double nrm = std::sqrt(std::norm(a) + std::norm(b));
    if (std::abs(nrm - 1.0) > kInputNormSlack)
      throw NormError("input state norm " + format_real(nrm) +
                      " is off unit norm by more than 1e-6");
    config.a = a / nrm;
    config.b = b / nrm;
    config.renorm_factor = 1.0 / nrm;
  }
  return config;
}

int cli_main(const std::vector<std::string>& argv) {
  try {
    const CliConfig config = parse_args(argv);
    if (config.command != Command::kRandomTrials)
      std::cerr << "# input renormalized by factor "
                << format_real(config.renorm_factor) << "\n";
    return dispatch(config);
  } catch (const HelpRequested& help) {
    std::cout << help.text;
    return 0;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    // remaining failures (bad chi files, off-norm inputs, bad domain
    // values) are input errors
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

int cli_main(int argc, const char* const* argv) {
  return cli_main(std::vector<std::string>(argv, argv + argc));
}

}  // namespace qteleport
