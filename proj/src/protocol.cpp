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

#include "qteleport/protocol.hpp"

#include <cmath>
#include <numbers>

namespace qteleport {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double reduce_mod_two_pi(double theta) {
  if (!std::isfinite(theta))
    throw NonFiniteParameter("theta must be finite");
  double t = std::fmod(theta, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  return t;
}

}  // namespace

BellBasis bell_basis() {
  const double r = 1.0 / std::numbers::sqrt2;
  BellBasis b{ComplexVector(4), ComplexVector(4), ComplexVector(4),
              ComplexVector(4)};
  // product basis order: |++>, |+->, |-+>, |-->
  b.psi_plus << 0, r, r, 0;
  b.psi_minus << 0, r, -r, 0;
  b.phi_plus << r, 0, 0, r;
  b.phi_minus << r, 0, 0, -r;
  return b;
}

PremeasurementSpec lueders_spec() {
  const BellBasis b = bell_basis();
  return PremeasurementSpec{{b.psi_plus, b.psi_minus, b.phi_plus, b.phi_minus},
                            "lueders"};
}

CorrectionBranches correction_branches(const QubitState& phi) {
  const Complex a = phi.a();
  const Complex b = phi.b();
  CorrectionBranches out{ComplexVector(2), ComplexVector(2), ComplexVector(2),
                         ComplexVector(2)};
  out.phi1 << -a, b;
  out.phi2 << -a, -b;
  out.phi3 << -b, a;
  out.phi4 << b, a;
  return out;
}

ComplexMatrix premeasurement_unitary(const PremeasurementSpec& spec) {
  const BellBasis bell = bell_basis();
  const ComplexVector eta1 = probe_vector(0);
  const std::array<ComplexVector, 4> bell_vectors{
      bell.psi_plus, bell.psi_minus, bell.phi_plus, bell.phi_minus};

  std::vector<std::pair<Eigen::Index, ComplexVector>> in_cols, out_cols;
  for (int i = 0; i < 4; ++i) {
    in_cols.emplace_back(i, kron(eta1, bell_vectors[i]));
    out_cols.emplace_back(i, kron(probe_vector(i), spec.chi[i]));
  }
  // Rotate the canonical slice onto the Bell slice, then onto the
  // pointer states: U (eta_1 Bell_i) = V_out V_in^dagger (eta_1 Bell_i)
  // = V_out e_i = eta_i chi_i.
  const ComplexMatrix v_in = complete_to_unitary(in_cols);
  const ComplexMatrix v_out = complete_to_unitary(out_cols);
  return v_out * v_in.adjoint();
}

ComplexVector post_measurement_state(const QubitState& phi,
                                     const PremeasurementSpec& spec) {
  const BellBasis bell = bell_basis();
  const ComplexVector initial =
      kron(probe_vector(0), kron(phi.vector(), bell.psi_minus));
  const ComplexMatrix u =
      embed(premeasurement_unitary(spec), {0, 1, 2}, total_shape());
  return u * initial;
}

ReducedStates reduced_states(const ComplexVector& total) {
  const DensityOperator rho = DensityOperator::pure(total, total_shape());
  return ReducedStates{
      partial_trace(rho, {0}), partial_trace(rho, {3}),
      partial_trace(rho, {1, 2}), partial_trace(rho, {0, 1, 2}),
      partial_trace(rho, {1, 2, 3})};
}

ComplexMatrix correction_unitary() {
  ComplexMatrix w = ComplexMatrix::Zero(8, 8);
  // Flat index 2*i + s on H0 (x) H3, probe digit i, qubit digit s
  // (s = 0 for |+>, 1 for |->). One column per table entry.
  w(0, 0) = -1.0;  // eta_1|+>  ->  -eta_1|+>
  w(1, 1) = 1.0;   // eta_1|->  ->   eta_1|->
  w(2, 2) = -1.0;  // eta_2|+>  ->  -eta_2|+>
  w(3, 3) = -1.0;  // eta_2|->  ->  -eta_2|->
  w(5, 4) = -1.0;  // eta_3|+>  ->  -eta_3|->
  w(4, 5) = 1.0;   // eta_3|->  ->   eta_3|+>
  w(7, 6) = 1.0;   // eta_4|+>  ->   eta_4|->
  w(6, 7) = 1.0;   // eta_4|->  ->   eta_4|+>
  return w;
}

ComplexMatrix perturbed_correction_unitary(double theta) {
  const double t = reduce_mod_two_pi(theta);
  ComplexMatrix w = correction_unitary();
  w(2, 2) = -std::polar(1.0, t);
  return w;
}

DensityOperator theta_mixture(const QubitState& phi, double theta) {
  const double t = reduce_mod_two_pi(theta);
  ComplexVector shifted(2);
  shifted << std::polar(1.0, t) * phi.a(), phi.b();
  const ComplexMatrix mix =
      0.75 * projector(phi.vector()) + 0.25 * projector(shifted);
  return DensityOperator(mix, TensorShape({2}));
}

ComplexMatrix coincidence_observable(const QubitState& phi) {
  ComplexMatrix a = ComplexMatrix::Zero(8, 8);
  for (int i : {0, 2, 3})  // eta_1, eta_3, eta_4
    a += projector(ComplexVector(kron(probe_vector(i), phi.vector())));
  return a;
}

double fidelity_closed_form(const QubitState& phi, double theta) {
  const double t = reduce_mod_two_pi(theta);
  const double p = std::norm(phi.a());
  const double q = std::norm(phi.b());
  return 0.75 + 0.25 * std::norm(std::polar(1.0, t) * p + q);
}

ProtocolReport run_protocol(const QubitState& phi,
                            const PremeasurementSpec& spec,
                            std::optional<double> theta) {
  const ComplexVector after_u = post_measurement_state(phi, spec);
  ReducedStates reduced = reduced_states(after_u);
  const double f_after_u = fidelity(phi.vector(), reduced.T3);

  const ComplexMatrix w =
      theta ? perturbed_correction_unitary(*theta) : correction_unitary();
  const ComplexVector final_state =
      embed(w, {0, 3}, total_shape()) * after_u;
  DensityOperator t3_final = partial_trace(
      DensityOperator::pure(final_state, total_shape()), {3});
  const double f_final = fidelity(phi.vector(), t3_final);

  const ComplexMatrix a =
      embed(coincidence_observable(phi), {0, 3}, total_shape());
  const double coincidence = final_state.dot(a * final_state).real();

  return ProtocolReport{phi,
                        spec,
                        theta,
                        after_u,
                        final_state,
                        std::move(reduced),
                        std::move(t3_final),
                        f_after_u,
                        f_final,
                        coincidence};
}

}  // namespace qteleport
