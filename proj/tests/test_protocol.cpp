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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "qteleport/protocol.hpp"

using namespace qteleport;
using oracles::max_abs_diff;

namespace {

const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

QubitState seeded_state(std::uint64_t seed) {
  const ComplexVector v = haar_random_qubit(seed);
  return QubitState(v(0), v(1));
}

std::array<ComplexVector, 4> branch_array(const QubitState& phi) {
  const CorrectionBranches b = correction_branches(phi);
  return {b.phi1, b.phi2, b.phi3, b.phi4};
}

// The four-branch expansion (1/2) sum_i eta_i chi_i phi_i of the
// post-premeasurement state, assembled directly from its pieces.
ComplexVector expansion_oracle(const QubitState& phi,
                               const PremeasurementSpec& spec) {
  const auto branches = branch_array(phi);
  ComplexVector total = ComplexVector::Zero(32);
  for (int i = 0; i < 4; ++i)
    total +=
        0.5 * kron(probe_vector(i), kron(spec.chi[i], branches[i]));
  return total;
}

PremeasurementSpec random_spec(std::uint64_t seed) {
  std::mt19937_64 engine(seed);
  PremeasurementSpec spec;
  spec.label = "random";
  for (auto& chi : spec.chi) chi = haar_random_state(4, engine);
  return spec;
}

}  // namespace

TEST_CASE("bell_basis reproduces the four entangled vectors") {
  const BellBasis b = bell_basis();
  ComplexVector expected(4);

  expected << 0, kInvSqrt2, kInvSqrt2, 0;
  CHECK(max_abs_diff(b.psi_plus, expected) < kNormTol);
  expected << 0, kInvSqrt2, -kInvSqrt2, 0;
  CHECK(max_abs_diff(b.psi_minus, expected) < kNormTol);
  expected << kInvSqrt2, 0, 0, kInvSqrt2;
  CHECK(max_abs_diff(b.phi_plus, expected) < kNormTol);
  expected << kInvSqrt2, 0, 0, -kInvSqrt2;
  CHECK(max_abs_diff(b.phi_minus, expected) < kNormTol);

  ComplexMatrix m(4, 4);
  m << b.psi_plus, b.psi_minus, b.phi_plus, b.phi_minus;
  CHECK(max_abs_diff(m.adjoint() * m, ComplexMatrix::Identity(4, 4)) <
        kNormTol);
}

TEST_CASE("lueders_spec uses the Bell vectors in order") {
  const PremeasurementSpec spec = lueders_spec();
  const BellBasis b = bell_basis();
  CHECK(max_abs_diff(spec.chi[0], b.psi_plus) == 0.0);
  CHECK(max_abs_diff(spec.chi[1], b.psi_minus) == 0.0);
  CHECK(max_abs_diff(spec.chi[2], b.phi_plus) == 0.0);
  CHECK(max_abs_diff(spec.chi[3], b.phi_minus) == 0.0);
  for (const ComplexVector& chi : spec.chi)
    CHECK(std::abs(chi.norm() - 1.0) < kNormTol);
}

TEST_CASE("premeasurement unitary fixes the pointer slice") {
  const ComplexMatrix u = premeasurement_unitary(lueders_spec());
  CHECK(max_abs_diff(u.adjoint() * u, ComplexMatrix::Identity(16, 16)) <
        kUnitaryTol);

  const BellBasis b = bell_basis();
  const ComplexVector in = kron(probe_vector(0), b.psi_plus);
  CHECK(max_abs_diff(u * in, in) < kNormTol);
}

TEST_CASE("premeasurement unitary sends the slice to the targets") {
  const BellBasis b = bell_basis();
  const std::array<ComplexVector, 4> bells{b.psi_plus, b.psi_minus,
                                           b.phi_plus, b.phi_minus};

  PremeasurementSpec custom = lueders_spec();
  custom.label = "custom";
  custom.chi[2] = ComplexVector::Zero(4);
  custom.chi[2](0) = 1.0;  // chi_3 = |++>
  const ComplexMatrix u_custom = premeasurement_unitary(custom);
  CHECK(max_abs_diff(u_custom * kron(probe_vector(0), b.phi_plus),
                     kron(probe_vector(2), custom.chi[2])) < kNormTol);

  const PremeasurementSpec rand = random_spec(404);
  const ComplexMatrix u = premeasurement_unitary(rand);
  CHECK(max_abs_diff(u.adjoint() * u, ComplexMatrix::Identity(16, 16)) <
        kUnitaryTol);
  for (int i = 0; i < 4; ++i)
    CHECK(max_abs_diff(u * kron(probe_vector(0), bells[i]),
                       kron(probe_vector(i), rand.chi[i])) < kNormTol);
}

TEST_CASE("premeasurement unitary rejects non-unit targets") {
  PremeasurementSpec bad = lueders_spec();
  bad.chi[1] *= 2.0;
  CHECK_THROWS_AS(premeasurement_unitary(bad), NotOrthonormalInput);
}

TEST_CASE("correction branches") {
  const QubitState plus(1.0, 0.0);
  const auto b = branch_array(plus);
  ComplexVector expected(2);
  expected << -1, 0;
  CHECK(max_abs_diff(b[0], expected) == 0.0);
  CHECK(max_abs_diff(b[1], expected) == 0.0);
  expected << 0, 1;
  CHECK(max_abs_diff(b[2], expected) == 0.0);
  CHECK(max_abs_diff(b[3], expected) == 0.0);

  const QubitState phi = seeded_state(321);
  for (const ComplexVector& v : branch_array(phi))
    CHECK(std::abs(v.norm() - 1.0) < kNormTol);

  // <phi_1|phi_2> expands symbolically to |a|^2 - |b|^2
  const auto seeded = branch_array(phi);
  const Complex overlap = seeded[0].dot(seeded[1]);
  const Complex expected_overlap =
      std::norm(phi.a()) - std::norm(phi.b());
  CHECK(std::abs(overlap - expected_overlap) < kNormTol);
}

TEST_CASE("post-measurement state matches the branch expansion") {
  const QubitState phi = seeded_state(2024);
  for (const PremeasurementSpec& spec : {lueders_spec(), random_spec(77)}) {
    const ComplexVector state = post_measurement_state(phi, spec);
    CHECK(std::abs(state.norm() - 1.0) < kNormTol);
    CHECK(max_abs_diff(state, expansion_oracle(phi, spec)) < 1e-10);
  }
}

TEST_CASE("reductions after the premeasurement") {
  const QubitState phi = seeded_state(555);
  const ComplexVector state = post_measurement_state(phi, lueders_spec());
  const ReducedStates red = reduced_states(state);

  CHECK(max_abs_diff(red.T0.matrix(),
                     0.25 * ComplexMatrix::Identity(4, 4)) < 1e-10);
  CHECK(max_abs_diff(red.T3.matrix(),
                     0.5 * ComplexMatrix::Identity(2, 2)) < 1e-10);
  for (const DensityOperator* t :
       {&red.T0, &red.T3, &red.T12, &red.T012, &red.T123})
    CHECK(std::abs(t->matrix().trace() - Complex(1.0)) < kNormTol);

  // for Bell targets the pair reduction is the uniform mixture of the
  // four Bell projectors, which is maximally mixed
  const PremeasurementSpec spec = lueders_spec();
  ComplexMatrix mix = ComplexMatrix::Zero(4, 4);
  for (const ComplexVector& chi : spec.chi) mix += 0.25 * projector(chi);
  CHECK(max_abs_diff(mix, 0.25 * ComplexMatrix::Identity(4, 4)) < kNormTol);
  CHECK(max_abs_diff(red.T12.matrix(), mix) < 1e-10);

  CHECK(fidelity(phi.vector(), red.T3) == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("T123 and T012 match their outer-product assemblies") {
  const QubitState phi = seeded_state(808);
  const PremeasurementSpec spec = random_spec(909);
  const ComplexVector state = post_measurement_state(phi, spec);
  const ReducedStates red = reduced_states(state);
  const auto branches = branch_array(phi);

  ComplexMatrix t123 = ComplexMatrix::Zero(8, 8);
  for (int i = 0; i < 4; ++i)
    t123 += 0.25 * projector(ComplexVector(kron(spec.chi[i], branches[i])));
  CHECK(max_abs_diff(red.T123.matrix(), t123) < 1e-10);

  // coefficient of |eta_i chi_i><eta_j chi_j| is <phi_j|phi_i>/4 with
  // the bra antilinear in its argument
  ComplexMatrix t012 = ComplexMatrix::Zero(16, 16);
  for (int i = 0; i < 4; ++i) {
    const ComplexVector vi = kron(probe_vector(i), spec.chi[i]);
    for (int j = 0; j < 4; ++j) {
      const ComplexVector vj = kron(probe_vector(j), spec.chi[j]);
      t012 += 0.25 * branches[j].dot(branches[i]) * (vi * vj.adjoint());
    }
  }
  CHECK(max_abs_diff(red.T012.matrix(), t012) < 1e-10);
}

TEST_CASE("correction unitary reproduces the conditional table") {
  const ComplexMatrix w = correction_unitary();

  CHECK(w(0, 0) == Complex(-1.0));
  CHECK(w(1, 1) == Complex(1.0));
  CHECK(w(2, 2) == Complex(-1.0));
  CHECK(w(3, 3) == Complex(-1.0));
  CHECK(w(5, 4) == Complex(-1.0));
  CHECK(w(4, 5) == Complex(1.0));
  CHECK(w(7, 6) == Complex(1.0));
  CHECK(w(6, 7) == Complex(1.0));

  int nonzero = 0;
  for (Eigen::Index r = 0; r < 8; ++r)
    for (Eigen::Index c = 0; c < 8; ++c)
      if (w(r, c) != Complex(0.0)) ++nonzero;
  CHECK(nonzero == 8);

  CHECK(max_abs_diff(w.adjoint() * w, ComplexMatrix::Identity(8, 8)) <
        kUnitaryTol);

  ComplexVector plus(2), minus(2);
  plus << 1, 0;
  minus << 0, 1;
  CHECK(max_abs_diff(w * kron(probe_vector(2), plus),
                     ComplexVector(-kron(probe_vector(2), minus))) == 0.0);
  CHECK(max_abs_diff(w * kron(probe_vector(3), plus),
                     kron(probe_vector(3), minus)) == 0.0);
}

TEST_CASE("perturbed correction differs in a single phase") {
  CHECK(max_abs_diff(perturbed_correction_unitary(0.0),
                     correction_unitary()) == 0.0);

  const ComplexMatrix w = perturbed_correction_unitary(std::numbers::pi / 2);
  CHECK(std::abs(w(2, 2) - Complex(0.0, -1.0)) < kNormTol);
  ComplexMatrix rest = w;
  rest(2, 2) = correction_unitary()(2, 2);
  CHECK(max_abs_diff(rest, correction_unitary()) == 0.0);

  for (double theta : {0.1, 1.0, std::numbers::pi, 5.5}) {
    const ComplexMatrix wt = perturbed_correction_unitary(theta);
    CHECK(max_abs_diff(wt.adjoint() * wt, ComplexMatrix::Identity(8, 8)) <
          kUnitaryTol);
  }

  // canonicalization mod 2 pi
  CHECK(max_abs_diff(perturbed_correction_unitary(-std::numbers::pi / 2),
                     perturbed_correction_unitary(3 * std::numbers::pi / 2)) <
        kNormTol);

  CHECK_THROWS_AS(perturbed_correction_unitary(
                      std::numeric_limits<double>::quiet_NaN()),
                  NonFiniteParameter);
  CHECK_THROWS_AS(perturbed_correction_unitary(
                      std::numeric_limits<double>::infinity()),
                  NonFiniteParameter);
}

TEST_CASE("plain run teleports exactly") {
  const QubitState phi = seeded_state(31337);
  const ProtocolReport report = run_protocol(phi, lueders_spec());

  CHECK_FALSE(report.theta.has_value());
  CHECK(report.total_state_after_U.size() == 32);
  CHECK(report.total_state_final.size() == 32);
  CHECK(report.fidelity_after_U == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(report.fidelity_final == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(max_abs_diff(report.T3_final.matrix(), projector(phi.vector())) <
        1e-10);
  CHECK(report.coincidence_expectation ==
        doctest::Approx(0.75).epsilon(1e-10));

  // final state is (1/2)(sum_i eta_i chi_i) phi
  const PremeasurementSpec spec = lueders_spec();
  ComplexVector pair_part = ComplexVector::Zero(16);
  for (int i = 0; i < 4; ++i)
    pair_part += kron(probe_vector(i), spec.chi[i]);
  CHECK(max_abs_diff(report.total_state_final,
                     ComplexVector(0.5 * kron(pair_part, phi.vector()))) <
        1e-10);
}

TEST_CASE("teleportation holds for non-orthogonal targets") {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const QubitState phi = seeded_state(seed);
    const PremeasurementSpec spec = random_spec(seed + 1000);
    const ProtocolReport report = run_protocol(phi, spec);
    CHECK(report.fidelity_after_U == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(max_abs_diff(report.reduced.T3.matrix(),
                       0.5 * ComplexMatrix::Identity(2, 2)) < 1e-10);
    CHECK(report.fidelity_final == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(max_abs_diff(report.T3_final.matrix(), projector(phi.vector())) <
          1e-10);
  }
}

TEST_CASE("perturbed run reaches the closed-form mixture") {
  const QubitState balanced(kInvSqrt2, kInvSqrt2);
  const ProtocolReport report =
      run_protocol(balanced, lueders_spec(), std::numbers::pi);
  CHECK(report.fidelity_final == doctest::Approx(0.75).epsilon(1e-10));

  const DensityOperator mixture =
      theta_mixture(balanced, std::numbers::pi);
  CHECK(max_abs_diff(report.T3_final.matrix(), mixture.matrix()) < 1e-10);

  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(mixture.matrix(),
                                                  Eigen::EigenvaluesOnly);
  CHECK(es.eigenvalues()(0) == doctest::Approx(0.25).epsilon(1e-10));
  CHECK(es.eigenvalues()(1) == doctest::Approx(0.75).epsilon(1e-10));
}

TEST_CASE("theta mixture degenerate cases") {
  const QubitState phi = seeded_state(111);
  CHECK(max_abs_diff(theta_mixture(phi, 0.0).matrix(),
                     projector(phi.vector())) < kNormTol);

  const QubitState minus_only(0.0, 1.0);
  for (double theta : {0.3, 2.0, 5.0})
    CHECK(max_abs_diff(theta_mixture(minus_only, theta).matrix(),
                       projector(minus_only.vector())) < kNormTol);
}

TEST_CASE("pipeline matches the theta mixture on seeded pairs") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const QubitState phi = seeded_state(seed + 7);
    const double theta = 0.61 * (seed + 1);
    const ProtocolReport report =
        run_protocol(phi, lueders_spec(), theta);
    CHECK(max_abs_diff(report.T3_final.matrix(),
                       theta_mixture(phi, theta).matrix()) < 1e-10);
    CHECK(std::abs(report.fidelity_final -
                   fidelity_closed_form(phi, theta)) < 1e-10);
    CHECK(report.coincidence_expectation ==
          doctest::Approx(0.75).epsilon(1e-10));
  }
}

TEST_CASE("closed-form fidelity") {
  const QubitState phi = seeded_state(99);
  CHECK(fidelity_closed_form(phi, 0.0) == doctest::Approx(1.0).epsilon(1e-12));

  const QubitState plus(1.0, 0.0);
  for (double theta : {0.5, 1.5, 4.0})
    CHECK(fidelity_closed_form(plus, theta) ==
          doctest::Approx(1.0).epsilon(1e-12));

  const QubitState balanced(kInvSqrt2, kInvSqrt2);
  CHECK(fidelity_closed_form(balanced, std::numbers::pi) ==
        doctest::Approx(0.75).epsilon(1e-12));
}

TEST_CASE("coincidence observable is a rank-3 projector") {
  const QubitState phi = seeded_state(1234);
  const ComplexMatrix a = coincidence_observable(phi);
  CHECK(max_abs_diff(a * a, a) < kNormTol);
  CHECK(std::abs(a.trace() - Complex(3.0)) < kNormTol);

  const ProtocolReport report = run_protocol(phi, lueders_spec(), 0.7);
  CHECK(report.coincidence_expectation ==
        doctest::Approx(0.75).epsilon(1e-10));
}

TEST_CASE("global phase of the input changes nothing observable") {
  const QubitState phi = seeded_state(3);
  const Complex phase = std::polar(1.0, 0.77);
  const QubitState shifted(phase * phi.a(), phase * phi.b());

  const ProtocolReport r1 = run_protocol(phi, lueders_spec(), 1.9);
  const ProtocolReport r2 = run_protocol(shifted, lueders_spec(), 1.9);

  CHECK(std::abs(r1.fidelity_after_U - r2.fidelity_after_U) < 1e-10);
  CHECK(std::abs(r1.fidelity_final - r2.fidelity_final) < 1e-10);
  CHECK(std::abs(r1.coincidence_expectation - r2.coincidence_expectation) <
        1e-10);
  CHECK(max_abs_diff(r1.reduced.T0.matrix(), r2.reduced.T0.matrix()) < 1e-10);
  CHECK(max_abs_diff(r1.reduced.T3.matrix(), r2.reduced.T3.matrix()) < 1e-10);
  CHECK(max_abs_diff(r1.reduced.T12.matrix(), r2.reduced.T12.matrix()) <
        1e-10);
  CHECK(max_abs_diff(r1.reduced.T012.matrix(), r2.reduced.T012.matrix()) <
        1e-10);
  CHECK(max_abs_diff(r1.reduced.T123.matrix(), r2.reduced.T123.matrix()) <
        1e-10);
  CHECK(max_abs_diff(r1.T3_final.matrix(), r2.T3_final.matrix()) < 1e-10);
}

TEST_CASE("QubitState rejects non-normalized amplitudes") {
  CHECK_THROWS_AS(QubitState(1.0, 1.0), NotNormalized);
  CHECK_THROWS_AS(QubitState(0.0, 0.0), NotNormalized);
}
