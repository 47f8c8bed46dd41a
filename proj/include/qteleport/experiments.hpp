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

/// \file experiments.hpp
/// Batch drivers over the protocol: theta sweeps, randomized trials and
/// per-run consistency checks.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qteleport/protocol.hpp"

namespace qteleport {

/// One grid point of a theta sweep.
struct SweepRow {
  double theta;
  double fidelity_pipeline;
  double fidelity_closed_form;
  double coincidence_expectation;
  double abs_gap;
};

struct ThetaSweep {
  std::string label;
  std::vector<SweepRow> rows;
};

/// Evaluates the full pipeline and the closed form on the uniform grid
/// theta_k = 2 pi k / n_points, k = 0..n_points-1. Requires n_points >= 2.
ThetaSweep sweep_theta(const QubitState& phi, const PremeasurementSpec& spec,
                       int n_points, const std::string& label);

struct TrialSummary {
  int n_trials;
  double min_fidelity;
  double max_fidelity;
  double mean_fidelity;
  double max_unitarity_defect;
  std::uint64_t seed;
};

/// Four independent Haar-random unit targets in C^4; no orthogonality.
PremeasurementSpec random_premeasurement_spec(std::mt19937_64& engine);

/// Runs `n` teleportation trials with Haar-random inputs (and, when
/// `randomize_chi` is set, random non-orthogonal premeasurement targets),
/// recording final fidelities and the unitarity defect of the coupling.
TrialSummary random_trials(int n, std::uint64_t seed, bool randomize_chi);

/// One named consistency check of a finished run. `value`/`expected`
/// are present for scalar checks only.
struct CheckResult {
  std::string name;
  double residual;
  double tolerance;
  bool passed;
  std::optional<double> value;
  std::optional<double> expected;
};

/// Evaluates the closed-form values a run must reproduce: the uniform
/// probe and target reductions, both fidelities, the coincidence
/// expectation and the coefficient structure of the probe+pair
/// reduction.
std::vector<CheckResult> coverage_report(const ProtocolReport& report,
                                         double tolerance = 1e-10);

}  // namespace qteleport
