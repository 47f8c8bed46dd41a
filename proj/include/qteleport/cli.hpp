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

/// \file cli.hpp
/// Command-line front end. Exit codes: 0 success, 1 a consistency check
/// of a run failed, 2 usage or input error, 3 I/O error.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qteleport/serialize.hpp"

namespace qteleport {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// --help was requested; carries the help text.
struct HelpRequested {
  std::string text;
};

enum class Command { kRun, kSweepTheta, kRandomTrials, kShowState };

struct CliConfig {
  Command command = Command::kRun;
  Complex a{0.0, 0.0};  ///< input amplitudes, renormalized exactly
  Complex b{0.0, 0.0};
  double renorm_factor = 1.0;
  std::optional<double> theta;
  std::optional<int> points;
  std::optional<int> trials;
  std::uint64_t seed = 0;
  bool randomize_chi = false;
  std::optional<std::string> chi_file;
  std::optional<std::string> out;
  std::string format;
};

/// Parses and validates argv (argv[0] is the program name). Throws
/// UsageError for grammar violations, NormError when the input
/// amplitudes are off unit norm by more than 1e-6, HelpRequested for
/// --help.
CliConfig parse_args(const std::vector<std::string>& argv);

/// Full dispatch; returns the process exit code.
int cli_main(const std::vector<std::string>& argv);
int cli_main(int argc, const char* const* argv);

}  // namespace qteleport
