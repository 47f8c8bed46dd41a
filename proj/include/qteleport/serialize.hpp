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

/// \file serialize.hpp
/// Byte-deterministic emission of reports and tables. Reals carry 17
/// significant decimal digits so every emitted number parses back to
/// the identical double; complex values appear as [re, im] pairs and
/// density operators as nested row-major arrays of such pairs.

#pragma once

#include <string>
#include <vector>

#include "qteleport/experiments.hpp"

namespace qteleport {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct MissingVector : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NormError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Shortest decimal form with up to 17 significant digits; exact on
/// round trip.
std::string format_real(double x);

std::string report_json(const ProtocolReport& report,
                        const std::vector<CheckResult>& checks,
                        double tolerance);

std::string sweep_csv(const std::vector<SweepRow>& rows);
std::string sweep_json(const ThetaSweep& sweep, double tolerance);

std::string trials_csv(const TrialSummary& summary);
std::string trials_json(const TrialSummary& summary, double tolerance);

/// Plain-text listing of the 32 amplitudes of the post-premeasurement
/// and final states, labeled eta_i|s1 s2 s3>.
std::string show_state_text(const ProtocolReport& report);

/// Parses a premeasurement spec from the JSON document
/// {"chi": [[[re, im] x4] x4]}; vectors use the product basis order
/// |++>, |+->, |-+>, |-->. Norms must be within 1e-9 of 1 and are then
/// renormalized exactly.
PremeasurementSpec parse_chi_spec(const std::string& text,
                                  const std::string& label);

/// Reads and parses a chi file; unreadable files raise IoError.
PremeasurementSpec load_chi_spec(const std::string& path);

}  // namespace qteleport
