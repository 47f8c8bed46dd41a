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

#include "qteleport/experiments.hpp"

#include <cmath>
#include <numbers>

namespace qteleport {

ThetaSweep sweep_theta(const QubitState& phi, const PremeasurementSpec& spec,
                       int n_points, const std::string& label) {
  if (n_points < 2)
    throw std::invalid_argument("sweep_theta: n_points must be >= 2");
  ThetaSweep sweep{label, {}};
  sweep.rows.reserve(n_points);
  for (int k = 0; k < n_points; ++k) {
    const double theta = 2.0 * std::numbers::pi * k / n_points;
    const ProtocolReport report = run_protocol(phi, spec, theta);
    const double closed = fidelity_closed_form(phi, theta);
    sweep.rows.push_back({theta, report.fidelity_final, closed,
                          report.coincidence_expectation,
                          std::abs(report.fidelity_final - closed)});
  }
  return sweep;
}

PremeasurementSpec random_premeasurement_spec(std::mt19937_64& engine) {
  PremeasurementSpec spec;
  spec.label = "random";
  for (auto& chi : spec.chi) chi = haar_random_state(4, engine);
  return spec;
}

TrialSummary random_trials(int n, std::uint64_t seed, bool randomize_chi) {
  if (n < 1) throw std::invalid_argument("random_trials: n must be >= 1");
  std::mt19937_64 engine(seed);
  const PremeasurementSpec lueders = lueders_spec();
  const ComplexMatrix identity16 = ComplexMatrix::Identity(16, 16);

  double min_f = 1.0, max_f = 0.0, sum_f = 0.0, max_defect = 0.0;
  for (int trial = 0; trial < n; ++trial) {
    const ComplexVector v = haar_random_state(2, engine);
    const QubitState phi(v(0), v(1));
    const PremeasurementSpec spec =
        randomize_chi ? random_premeasurement_spec(engine) : lueders;

    const ComplexMatrix u = premeasurement_unitary(spec);
    const double defect =
        (u.adjoint() * u - identity16).cwiseAbs().maxCoeff();
    max_defect = std::max(max_defect, defect);

    const ProtocolReport report = run_protocol(phi, spec);
    min_f = std::min(min_f, report.fidelity_final);
    max_f = std::max(max_f, report.fidelity_final);
    sum_f += report.fidelity_final;
  }
  return TrialSummary{n, min_f, max_f, sum_f / n, max_defect, seed};
}

std::vector<CheckResult> coverage_report(const ProtocolReport& report,
                                         double tolerance) {
  std::vector<CheckResult> checks;
  const auto matrix_check = [&](const std::string& name, double residual) {
    checks.push_back({name, residual, tolerance, residual <= tolerance,
                      std::nullopt, std::nullopt});
  };
  const auto scalar_check = [&](const std::string& name, double value,
                                double expected) {
    const double residual = std::abs(value - expected);
    checks.push_back(
        {name, residual, tolerance, residual <= tolerance, value, expected});
  };

  matrix_check("T0_uniform",
               (report.reduced.T0.matrix() -
                0.25 * ComplexMatrix::Identity(4, 4))
                   .cwiseAbs()
                   .maxCoeff());
  matrix_check("T3_unpolarized",
               (report.reduced.T3.matrix() -
                0.5 * ComplexMatrix::Identity(2, 2))
                   .cwiseAbs()
                   .maxCoeff());
  scalar_check("fidelity_after_U", report.fidelity_after_U, 0.5);
  scalar_check("fidelity_final", report.fidelity_final,
               fidelity_closed_form(report.input, report.theta.value_or(0.0)));
  scalar_check("coincidence", report.coincidence_expectation, 0.75);

  // <eta_i chi_i| T012 |eta_j chi_j> must equal 1/4 <phi_j|phi_i>; the
  // pointer vectors eta_i keep the sandwich basis orthonormal for any
  // unit chi.
  const CorrectionBranches branches = correction_branches(report.input);
  const std::array<ComplexVector, 4> branch{branches.phi1, branches.phi2,
                                            branches.phi3, branches.phi4};
  double t012_residual = 0.0;
  for (int i = 0; i < 4; ++i) {
    const ComplexVector left = kron(probe_vector(i), report.spec.chi[i]);
    for (int j = 0; j < 4; ++j) {
      const ComplexVector right = kron(probe_vector(j), report.spec.chi[j]);
      const Complex sandwich =
          left.dot(report.reduced.T012.matrix() * right);
      const Complex expected = 0.25 * branch[j].dot(branch[i]);
      t012_residual = std::max(t012_residual, std::abs(sandwich - expected));
    }
  }
  matrix_check("T012_coefficients", t012_residual);

  return checks;
}

}  // namespace qteleport
