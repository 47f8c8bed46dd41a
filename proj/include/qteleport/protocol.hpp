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

/// \file protocol.hpp
/// The fully unitary teleportation pipeline on H0 (x) H1 (x) H2 (x) H3
/// with a four-dimensional probe H0 = C^4 and qubit factors H1..H3.
///
/// The input qubit lives on factor 1, the entangled resource pair on
/// factors 2 and 3. A premeasurement unitary couples the probe to
/// factors 1 and 2; a conditional correction acts on factors 0 and 3.
/// No measurement outcome is ever sampled: every quantity reported here
/// is a property of the deterministic unitary evolution.

#pragma once

#include <array>
#include <optional>
#include <string>

#include "qteleport/tensor.hpp"

namespace qteleport {

/// Composite shape {4, 2, 2, 2} of probe plus three qubits.
inline TensorShape total_shape() { return TensorShape({4, 2, 2, 2}); }

/// The pointer basis of the probe: canonical basis vectors of C^4.
/// `i` is zero-based; index i corresponds to the label eta_(i+1).
inline ComplexVector probe_vector(int i) {
  if (i < 0 || i >= 4) throw BadFactorIndex("probe_vector: index range");
  ComplexVector v = ComplexVector::Zero(4);
  v(i) = 1.0;
  return v;
}

/// Unit state a|+> + b|-> of a single qubit, |+> = (1,0), |-> = (0,1).
class QubitState {
 public:
  QubitState(Complex a, Complex b) : a_(a), b_(b) {
    if (std::abs(std::norm(a) + std::norm(b) - 1.0) > kNormTol)
      throw NotNormalized("QubitState: |a|^2 + |b|^2 != 1");
  }

  Complex a() const { return a_; }
  Complex b() const { return b_; }

  ComplexVector vector() const {
    ComplexVector v(2);
    v << a_, b_;
    return v;
  }

 private:
  Complex a_, b_;
};

/// The four maximally entangled two-qubit states, ordered
/// (Psi+, Psi-, Phi+, Phi-) over the product basis |++>,|+->,|-+>,|-->.
struct BellBasis {
  ComplexVector psi_plus;
  ComplexVector psi_minus;
  ComplexVector phi_plus;
  ComplexVector phi_minus;
};

BellBasis bell_basis();

/// Premeasurement target states chi_1..chi_4 on H1 (x) H2. Each chi must
/// be a unit vector; mutual orthogonality is not required.
struct PremeasurementSpec {
  std::array<ComplexVector, 4> chi;
  std::string label;
};

/// The von Neumann-Lueders choice: targets equal to the Bell vectors.
PremeasurementSpec lueders_spec();

/// The four post-correction branch states of the target qubit. phi2 is
/// stored as -phi, sign included.
struct CorrectionBranches {
  ComplexVector phi1, phi2, phi3, phi4;
};

CorrectionBranches correction_branches(const QubitState& phi);

/// 16x16 unitary on H0 (x) H1 (x) H2 coupling the probe to the Bell
/// basis: eta_1 (x) Bell_i maps to eta_i (x) chi_i. Off that slice the
/// action is fixed by the deterministic canonical completion.
ComplexMatrix premeasurement_unitary(const PremeasurementSpec& spec);

/// State of probe + three qubits after the premeasurement, starting
/// from eta_1 (x) phi (x) Psi-(23).
ComplexVector post_measurement_state(const QubitState& phi,
                                     const PremeasurementSpec& spec);

/// The five reductions of a total 32-dimensional pure state.
struct ReducedStates {
  DensityOperator T0;    ///< probe
  DensityOperator T3;    ///< target qubit
  DensityOperator T12;   ///< measured pair
  DensityOperator T012;  ///< probe + measured pair
  DensityOperator T123;  ///< all three qubits
};

ReducedStates reduced_states(const ComplexVector& total);

/// 8x8 conditional correction on H0 (x) H3.
ComplexMatrix correction_unitary();

/// Correction with the eta_2|+> element multiplied by exp(i*theta);
/// theta is reduced mod 2pi and must be finite.
ComplexMatrix perturbed_correction_unitary(double theta);

/// Closed-form reduced target state 3/4 P[phi] + 1/4 P[phi_theta] with
/// phi_theta = exp(i*theta) a|+> + b|->. Built directly, independent of
/// the pipeline.
DensityOperator theta_mixture(const QubitState& phi, double theta);

/// Projector P[eta_1 phi] + P[eta_3 phi] + P[eta_4 phi] on H0 (x) H3
/// whose expectation value detects probe/target coincidence.
ComplexMatrix coincidence_observable(const QubitState& phi);

/// Analytic fidelity 3/4 + 1/4 | |a|^2 exp(i*theta) + |b|^2 |^2 of the
/// perturbed run.
double fidelity_closed_form(const QubitState& phi, double theta);

/// Everything one protocol run produces.
struct ProtocolReport {
  QubitState input;
  PremeasurementSpec spec;
  std::optional<double> theta;  ///< absent for the plain correction
  ComplexVector total_state_after_U;
  ComplexVector total_state_final;
  ReducedStates reduced;     ///< reductions of the post-premeasurement state
  DensityOperator T3_final;  ///< target reduction after the correction
  double fidelity_after_U;
  double fidelity_final;
  double coincidence_expectation;
};

/// Runs premeasurement followed by the (plain or perturbed) correction
/// and fills every report field.
ProtocolReport run_protocol(const QubitState& phi,
                            const PremeasurementSpec& spec,
                            std::optional<double> theta = std::nullopt);

}  // namespace qteleport
