// Copyright 2026 The cwsdec Authors
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


#include "cwsdec/dense_sim.h"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <random>

#include "cwsdec/errors.h"
#include "test_support.h"

namespace cwsdec {
namespace {

constexpr double kPi = 3.14159265358979323846;

Complex omega(int d, int k) { return std::polar(1.0, 2.0 * kPi * k / d); }

double max_abs_diff(const Eigen::MatrixXcd& a, const testing::Mat& b) {
  double m = 0.0;
  for (std::size_t r = 0; r < b.dim; ++r)
    for (std::size_t c = 0; c < b.dim; ++c)
      m = std::max(m, std::abs(a(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) -
                               b(r, c)));
  return m;
}

TEST(ApplyPauli, SingleQuditExamples) {
  const StateVector two = StateVector::basis_state(3, 1, 2);
  const StateVector z2 = apply_pauli(parse_pauli("Z1^2", 3, 1), two);
  EXPECT_LT(std::abs(z2[2] - omega(3, 4)), 1e-12);
  EXPECT_LT(std::abs(z2[0]) + std::abs(z2[1]), 1e-12);

  const StateVector one = apply_pauli(parse_pauli("X1", 5, 1), StateVector::basis_state(5, 1, 0));
  EXPECT_LT(std::abs(one[1] - 1.0), 1e-12);
  const StateVector wrap = apply_pauli(parse_pauli("X1", 5, 1), StateVector::basis_state(5, 1, 4));
  EXPECT_LT(std::abs(wrap[0] - 1.0), 1e-12);
}

TEST(ApplyPauli, QuditZeroIsMostSignificant) {
  // |1,0> has index d on two qudits.
  const StateVector s = apply_pauli(parse_pauli("X1", 3, 2), StateVector::basis_state(3, 2, 0));
  EXPECT_LT(std::abs(s[3] - 1.0), 1e-12);
}

TEST(ApplyPauli, RegisterMismatch) {
  EXPECT_THROW(apply_pauli(parse_pauli("X1", 3, 2), StateVector::basis_state(3, 1, 0)),
               DimensionError);
  EXPECT_THROW(StateVector::basis_state(3, 1, 3), DimensionError);
}

TEST(DensePauli, MatchesIndependentOracle) {
  std::mt19937_64 rng(41);
  for (auto [d, n] : {std::pair{2, 3u}, std::pair{3, 2u}, std::pair{5, 2u}}) {
    for (int trial = 0; trial < 50; ++trial) {
      const PauliOp op = testing::random_op(d, n, rng);
      const Eigen::MatrixXcd dense = dense_pauli_matrix(op);
      ASSERT_LT(max_abs_diff(dense, testing::oracle_matrix(op)), 1e-12) << to_string(op);
      // apply_pauli agrees with the dense matrix column by column.
      const std::size_t col = rng() % dense.cols();
      const StateVector out = apply_pauli(op, StateVector::basis_state(d, n, col));
      ASSERT_LT((out.amplitudes() - dense.col(static_cast<Eigen::Index>(col))).norm(), 1e-12);
    }
  }
}

TEST(StabilizedState, UniformForSingleX) {
  const StateVector s = stabilized_state(StabilizerSet({parse_pauli("X1", 3, 1)}));
  for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(std::abs(s[i] - 1.0 / std::sqrt(3.0)), 0.0, 1e-12);
}

TEST(StabilizedState, FamilyGraphStateIsFixed) {
  for (int d : {2, 4, 5}) {
    const CwsCode code = build_family_5_d_3(d, true);
    const StateVector s = stabilized_state(code.stabilizers());
    EXPECT_NEAR(s.norm(), 1.0, 1e-12);
    EXPECT_EQ(stabilized_space_rank(code.stabilizers()), 1u);
    for (const PauliOp& g : code.stabilizers().generators()) {
      EXPECT_LT((apply_pauli(g, s).amplitudes() - s.amplitudes()).norm(), 1e-10) << d;
    }
  }
}

TEST(StabilizedState, Errors) {
  // (ZX)^2 = -I at d = 2.
  EXPECT_THROW(stabilized_state(StabilizerSet({parse_pauli("Z1 X1", 2, 1)})),
               UnsupportedGeneratorError);
  // Two copies of Z on qudit 0 leave qudit 1 free.
  const StabilizerSet loose({parse_pauli("Z1", 3, 2), parse_pauli("Z1^2", 3, 2)});
  EXPECT_EQ(stabilized_space_rank(loose), 3u);
  EXPECT_THROW(stabilized_state(loose), InvalidStabilizerError);
  // -I fixes nothing.
  const StabilizerSet empty_space({parse_pauli("Z1", 3, 2), PauliOp(1, ZdVec(3, {0, 0}), ZdVec(3, {0, 0}))});
  EXPECT_EQ(stabilized_space_rank(empty_space), 0u);
}

TEST(CodewordBasis, IsOrthonormal) {
  for (int d : {4, 5}) {
    const SubspaceBasis basis = codeword_basis(build_family_5_d_3(d));
    EXPECT_EQ(basis.rank(), static_cast<std::size_t>(d));
    EXPECT_LT(gram_identity_deviation(basis.columns().adjoint() * basis.columns()), 1e-10);
  }
}

TEST(SubspaceBasis, RejectsNonOrthonormal) {
  const StateVector a = StateVector::basis_state(2, 1, 0);
  const StateVector b(2, 1, Eigen::Vector2cd(1.0, 1.0) / std::sqrt(2.0));
  EXPECT_THROW(SubspaceBasis::from_states({a, b}, {"a", "b"}), PreconditionError);
  EXPECT_THROW(SubspaceBasis::from_states({a, a}, {"a", "a"}), PreconditionError);
  const Eigen::MatrixXcd g = gram_matrix({a, a});
  EXPECT_NEAR(gram_identity_deviation(g), 1.0, 1e-12);
}

TEST(Project, HalfProbability) {
  const SubspaceBasis basis = SubspaceBasis::from_states({StateVector::basis_state(2, 1, 0)}, {"0"});
  const StateVector plus(2, 1, Eigen::Vector2cd(1.0, 1.0) / std::sqrt(2.0));
  const Projection p = project(basis, plus);
  EXPECT_NEAR(p.probability, 0.5, 1e-12);
  EXPECT_NEAR(std::abs(p.unnormalized[0] - 1.0 / std::sqrt(2.0)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(p.unnormalized[1]), 0.0, 1e-12);
}

TEST(Measure, DeterministicOutcomesConsumeNoRandomness) {
  const SubspaceBasis basis = SubspaceBasis::from_states({StateVector::basis_state(2, 1, 0)}, {"0"});
  SeededRng rng(5);
  const MeasurementResult in = measure_subspace(basis, StateVector::basis_state(2, 1, 0), rng);
  EXPECT_EQ(in.outcome, Outcome::kIn);
  EXPECT_FALSE(in.consumed_randomness);
  const MeasurementResult out = measure_subspace(basis, StateVector::basis_state(2, 1, 1), rng);
  EXPECT_EQ(out.outcome, Outcome::kOut);
  EXPECT_EQ(rng.draws(), 0u);
}

TEST(Measure, FrequenciesFollowBornRule) {
  const SubspaceBasis basis = SubspaceBasis::from_states({StateVector::basis_state(2, 1, 0)}, {"0"});
  const StateVector plus(2, 1, Eigen::Vector2cd(1.0, 1.0) / std::sqrt(2.0));
  auto run = [&](std::uint64_t seed) {
    SeededRng rng(seed);
    std::vector<Outcome> outcomes;
    for (int i = 0; i < 1000; ++i) {
      const MeasurementResult r = measure_subspace(basis, plus, rng);
      const StateVector expect = r.outcome == Outcome::kIn ? StateVector::basis_state(2, 1, 0)
                                                           : StateVector::basis_state(2, 1, 1);
      EXPECT_NEAR(fidelity(r.collapsed, expect), 1.0, 1e-12);
      outcomes.push_back(r.outcome);
    }
    return outcomes;
  };
  const auto first = run(11);
  const double freq =
      static_cast<double>(std::count(first.begin(), first.end(), Outcome::kIn)) / 1000.0;
  EXPECT_NEAR(freq, 0.5, 0.05);
  EXPECT_EQ(first, run(11));
}

TEST(SeededRng, UniformIsInUnitInterval) {
  SeededRng rng(3);
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
  EXPECT_EQ(rng.draws(), 10000u);
}

TEST(Fidelity, IgnoresGlobalPhase) {
  const StateVector plus(3, 1, Eigen::Vector3cd(1.0, 1.0, 1.0) / std::sqrt(3.0));
  EXPECT_NEAR(fidelity(plus, plus.scaled(omega(3, 1))), 1.0, 1e-12);
  EXPECT_NEAR(fidelity(plus, StateVector::basis_state(3, 1, 0)), 1.0 / std::sqrt(3.0), 1e-12);
  EXPECT_NEAR(fidelity(StateVector::basis_state(3, 1, 0), StateVector::basis_state(3, 1, 2)), 0.0, 1e-15);
  EXPECT_THROW(StateVector(3, 1, Eigen::Vector3cd::Zero()).normalized(), DomainError);
}

TEST(Snapshot, RoundTrip) {
  const StateVector s = codeword_basis(build_family_5_d_3(4)).state(1);
  const auto path = std::filesystem::temp_directory_path() / "cwsdec_state.snap";
  save_state_snapshot(s, path);
  const StateVector back = load_state_snapshot(path);
  EXPECT_EQ(back.modulus(), 4);
  EXPECT_EQ(back.num_qudits(), 5u);
  EXPECT_LT((back.amplitudes() - s.amplitudes()).norm(), 1e-15);
  std::filesystem::remove(path);
  EXPECT_THROW(load_state_snapshot("/nonexistent/state.snap"), ParseError);
}

}  // namespace
}  // namespace cwsdec
