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


#include "cwsdec/decoder.h"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "cwsdec/errors.h"
#include "cwsdec/sweep.h"
#include "json.hpp"

namespace cwsdec {
namespace {

ZdVec vec(int d, std::vector<int> e) { return ZdVec(d, std::move(e)); }
PauliOp zop(int d, std::vector<int> e) { return PauliOp::z_type(vec(d, std::move(e))); }
PauliOp op5(const std::string& text) { return parse_pauli(text, 5, 5); }

const Decoder& decoder5() {
  static const Decoder dec = [] {
    CwsCode code = build_family_5_d_3(5);
    ErrorSetDecomposition d = decompose_weight1_errors(code);
    return Decoder(std::move(code), std::move(d));
  }();
  return dec;
}

StateVector corrupted(const Decoder& dec, const PauliOp& e, std::size_t word) {
  return apply_pauli(e, dec.codeword_basis().state(word));
}

std::vector<Outcome> outcomes(const std::vector<MeasurementRecord>& records) {
  std::vector<Outcome> out;
  for (const MeasurementRecord& r : records) out.push_back(r.outcome);
  return out;
}

TEST(Decompose, FamilyGroups) {
  const Decoder& dec = decoder5();
  const ErrorSetDecomposition& d = dec.decomposition();
  ASSERT_EQ(d.groups.size(), 5u);
  for (const DecompositionGroup& g : d.groups) EXPECT_EQ(g.group.order(), 25u);
  EXPECT_EQ(d.groups[0].group.generators(),
            (std::vector<PauliOp>{zop(5, {0, 4, 0, 0, 4}), zop(5, {1, 0, 0, 0, 0})}));
  EXPECT_EQ(d.groups[0].recovery, (std::vector<PauliOp>{op5("X1"), op5("Z1")}));
  // cl_s(X2^3 Z2) = e2 + 3 cl_s(X2) = (2,1,2,0,0).
  const ZdVec cls = cl_s(dec.code(), op5("X2^3 Z2"));
  EXPECT_EQ(cls, vec(5, {2, 1, 2, 0, 0}));
  EXPECT_EQ(d.groups[1].group.exponents_of(PauliOp::z_type(cls)), (std::vector<int>{3, 1}));
}

TEST(Decompose, BudgetMatchesFamilyAccounting) {
  EXPECT_EQ(measurement_budget(decoder5().decomposition()), (PhaseCounts{4, 2, 8}));
  EXPECT_EQ(measurement_budget(decompose_weight1_errors(build_family_5_d_3(4))),
            (PhaseCounts{4, 2, 6}));
}

TEST(Validate, FamilyIsClean) {
  for (int d : {4, 5}) {
    const CwsCode code = build_family_5_d_3(d);
    const ErrorSetDecomposition dec = decompose_weight1_errors(code);
    const SubspaceBasis basis = codeword_basis(code);
    const DecompositionReport rep =
        validate_decomposition(code, dec, enumerate_paulis(d, 5, 1, true), &basis);
    EXPECT_TRUE(rep.ok()) << (rep.ok() ? "" : rep.violations.front());
  }
}

TEST(Validate, ReportsViolations) {
  const CwsCode code = build_family_5_d_3(5);
  ErrorSetDecomposition bad;
  bad.groups.push_back({ErrorGroup(5, 5, {zop(5, {1, 1, 1, 1, 1})}), {}, "shift"});
  EXPECT_FALSE(validate_decomposition(code, bad, {}).ok());

  ErrorSetDecomposition trivial;
  trivial.groups.push_back({ErrorGroup(5, 5, {}), {}, ""});
  EXPECT_TRUE(validate_decomposition(code, trivial, {PauliOp::identity(5, 5)}).ok());
  // Weight-1 errors are not covered by the trivial decomposition.
  EXPECT_FALSE(validate_decomposition(code, trivial, {op5("Z1")}).ok());

  // Recovery generators in the wrong order do not match the group's classes.
  ErrorSetDecomposition swapped = decompose_weight1_errors(code);
  std::swap(swapped.groups[0].recovery[0], swapped.groups[0].recovery[1]);
  EXPECT_FALSE(validate_decomposition(code, swapped, {}).ok());
}

TEST(Locate, Examples) {
  const Decoder& dec = decoder5();
  SeededRng rng(1);
  const auto clean = dec.locate_group(dec.codeword_basis().state(0), rng);
  EXPECT_EQ(clean.group, 0u);
  EXPECT_EQ(outcomes(clean.records), std::vector<Outcome>{Outcome::kIn});

  const auto q5 = dec.locate_group(corrupted(dec, op5("X5^3"), 1), rng);
  EXPECT_EQ(q5.group, 4u);
  EXPECT_EQ(outcomes(q5.records), std::vector<Outcome>(4, Outcome::kOut));

  const auto q2 = dec.locate_group(corrupted(dec, op5("Z2^2"), 3), rng);
  EXPECT_EQ(q2.group, 1u);
  EXPECT_EQ(outcomes(q2.records), (std::vector<Outcome>{Outcome::kOut, Outcome::kIn}));
  EXPECT_EQ(q2.records[0].description, "D[0](Q) qudit 1");
  EXPECT_EQ(q2.records[1].description, "D[1](Q) qudit 2");
  EXPECT_EQ(rng.draws(), 0u);
}

TEST(Generators, Examples) {
  const Decoder& dec = decoder5();
  const ErrorGroup& g0 = dec.decomposition().groups[0].group;
  SeededRng rng(2);

  const auto sq = dec.identify_generators(corrupted(dec, g0.element({2, 0}), 0), 0, rng);
  EXPECT_EQ(sq.active, std::vector<std::size_t>{0});
  EXPECT_EQ(outcomes(sq.records), (std::vector<Outcome>{Outcome::kOut, Outcome::kIn}));
  EXPECT_EQ(sq.records[1].description, "D[0] without generator 1");

  const auto none = dec.identify_generators(dec.codeword_basis().state(2), 0, rng);
  EXPECT_TRUE(none.active.empty());
  EXPECT_EQ(none.records.size(), 2u);

  const auto both = dec.identify_generators(corrupted(dec, g0.element({1, 3}), 4), 0, rng);
  EXPECT_EQ(both.active, (std::vector<std::size_t>{0, 1}));
}

TEST(Powers, Examples) {
  const Decoder& dec = decoder5();
  const ErrorGroup& g0 = dec.decomposition().groups[0].group;
  const ErrorGroup& g1 = dec.decomposition().groups[1].group;
  SeededRng rng(3);

  const auto empty = dec.identify_powers(dec.codeword_basis().state(0), 0, {}, rng);
  EXPECT_TRUE(empty.exponents.empty());
  EXPECT_TRUE(empty.records.empty());

  const auto p = dec.identify_powers(corrupted(dec, g0.element({3, 1}), 1), 0, {0, 1}, rng);
  EXPECT_EQ(p.exponents, (std::vector<std::pair<std::size_t, int>>{{0, 3}, {1, 1}}));
  // Ascending r with early exit: three tries on generator 0, one on generator 1.
  EXPECT_EQ(p.records.size(), 4u);
  EXPECT_EQ(p.records[2].description, "D[0] slice active={0,1} s=0 r=3");

  const auto q = dec.identify_powers(corrupted(dec, g1.element({0, 2}), 2), 1, {1}, rng);
  EXPECT_EQ(q.exponents, (std::vector<std::pair<std::size_t, int>>{{1, 2}}));
  EXPECT_LE(q.records.size(), 4u);

  // An uncorrupted state lies in no slice with a nonzero exponent.
  EXPECT_THROW(dec.identify_powers(dec.codeword_basis().state(0), 0, {0}, rng),
               DecodeFailureError);
}

TEST(Decode, IdentityError) {
  const Decoder& dec = decoder5();
  SeededRng rng(4);
  const StateVector psi = dec.codeword_basis().state(3);
  const DecodeResult r = dec.decode(psi, rng);
  EXPECT_TRUE(r.identified_class.is_zero());
  EXPECT_EQ(r.transcript.counts(), (PhaseCounts{1, 2, 0}));
  EXPECT_NEAR(fidelity(r.corrected, psi), 1.0, 1e-9);
}

TEST(Decode, MixedErrorOnCodeword) {
  const Decoder& dec = decoder5();
  SeededRng rng(5);
  const PauliOp e = op5("X3^2 Z3^4");
  const StateVector psi = dec.codeword_basis().state(2);
  const DecodeResult r = dec.decode(apply_pauli(e, psi), rng);
  EXPECT_EQ(r.identified_class, vec(5, {0, 3, 4, 3, 0}));
  EXPECT_EQ(r.identified_class, cl_s(dec.code(), e));
  EXPECT_EQ(r.transcript.located_group, std::optional<std::size_t>(2));
  EXPECT_NEAR(fidelity(r.corrected, psi), 1.0, 1e-9);
  EXPECT_NEAR(r.code_space_fidelity, 1.0, 1e-9);
  for (const MeasurementRecord& rec : r.transcript.records) {
    EXPECT_LT(std::min(rec.probability, 1.0 - rec.probability), 1e-9);
  }
  EXPECT_EQ(r.transcript.random_draws, 0u);
}

TEST(Decode, Superposition) {
  const Decoder& dec = decoder5();
  SeededRng rng(6);
  const SubspaceBasis& b = dec.codeword_basis();
  const StateVector psi(5, 5, (b.state(1).amplitudes() + b.state(3).amplitudes()) / std::sqrt(2.0));
  const PauliOp e = op5("Z2^3");
  const DecodeResult r = dec.decode(apply_pauli(e, psi), rng);
  EXPECT_EQ(r.identified_class, cl_s(dec.code(), e));
  EXPECT_NEAR(fidelity(r.corrected, psi), 1.0, 1e-9);
}

TEST(Decode, ClassRepresentativeCorrectionLosesSuperpositions) {
  // With the Z-type class representative as the correction, an X error
  // leaves a word-dependent phase behind.
  CwsCode code = build_family_5_d_3(5);
  ErrorSetDecomposition d = decompose_weight1_errors(code);
  for (DecompositionGroup& g : d.groups) g.recovery.clear();
  const Decoder naive(std::move(code), std::move(d));
  const SubspaceBasis& b = naive.codeword_basis();
  const StateVector psi(5, 5, (b.state(0).amplitudes() + b.state(1).amplitudes()) / std::sqrt(2.0));
  SeededRng rng(7);
  const DecodeResult r = naive.decode(apply_pauli(op5("X1"), psi), rng);
  EXPECT_NEAR(r.code_space_fidelity, 1.0, 1e-9);
  EXPECT_LT(fidelity(r.corrected, psi), 0.99);

  SeededRng rng2(7);
  const DecodeResult good = decoder5().decode(apply_pauli(op5("X1"), psi), rng2);
  EXPECT_NEAR(fidelity(good.corrected, psi), 1.0, 1e-9);
}

TEST(Decode, CorrectionMismatchIsReported) {
  CwsCode code = build_family_5_d_3(5);
  ErrorSetDecomposition d = decompose_weight1_errors(code);
  std::swap(d.groups[0].recovery[0], d.groups[0].recovery[1]);
  const Decoder broken(std::move(code), std::move(d));
  SeededRng rng(8);
  const StateVector psi = apply_pauli(op5("Z1"), broken.codeword_basis().state(0));
  EXPECT_THROW(broken.decode(psi, rng), CorrectionMismatchError);
  SeededRng rng2(8);
  const DecodeAttempt a = broken.attempt_decode(psi, rng2);
  EXPECT_FALSE(a.result.has_value());
  EXPECT_FALSE(a.error.empty());
  EXPECT_EQ(a.transcript.located_group, std::optional<std::size_t>(0));
}

TEST(Decoder, RejectsEmptyDecomposition) {
  EXPECT_THROW(Decoder(build_family_5_d_3(4), ErrorSetDecomposition{}), DomainError);
}

TEST(Oracle, Examples) {
  const Decoder& dec = decoder5();
  const OraclePrediction z4 = symbolic_oracle(dec.code(), dec.decomposition(), op5("Z4"));
  EXPECT_EQ(z4.located_group, 3u);
  EXPECT_EQ(z4.active_generators, std::vector<std::size_t>{1});
  EXPECT_EQ(z4.exponents, (std::vector<std::pair<std::size_t, int>>{{1, 1}}));
  EXPECT_EQ(z4.identified_class, vec(5, {0, 0, 0, 1, 0}));

  const OraclePrediction x5 = symbolic_oracle(dec.code(), dec.decomposition(), op5("X5^2"));
  EXPECT_EQ(x5.located_group, 4u);
  EXPECT_EQ(x5.active_generators, std::vector<std::size_t>{0});
  EXPECT_EQ(x5.exponents, (std::vector<std::pair<std::size_t, int>>{{0, 2}}));
  EXPECT_EQ(x5.records.size(), 4u + 2u + 2u);

  const OraclePrediction id = symbolic_oracle(dec.code(), dec.decomposition(), PauliOp::identity(5, 5));
  EXPECT_EQ(id.located_group, 0u);
  EXPECT_TRUE(id.active_generators.empty());

  // Z1 Z3 is degenerate with X2^4, so it is covered.
  EXPECT_EQ(symbolic_oracle(dec.code(), dec.decomposition(), op5("Z1 Z3")).located_group, 1u);
  EXPECT_THROW(symbolic_oracle(dec.code(), dec.decomposition(), zop(5, {1, 1, 1, 1, 1})),
               CoverageError);
}

TEST(Properties, OracleAgreesWithSimulationAtD4) {
  CwsCode code = build_family_5_d_3(4);
  ErrorSetDecomposition d = decompose_weight1_errors(code);
  const Decoder dec(std::move(code), std::move(d));
  for (const PauliOp& e : enumerate_paulis(4, 5, 1, true)) {
    const OraclePrediction pred = symbolic_oracle(dec.code(), dec.decomposition(), e);
    std::vector<Outcome> first;
    for (std::size_t w = 0; w < dec.code().dimension(); ++w) {
      SeededRng rng(9);
      const StateVector psi = dec.codeword_basis().state(w);
      const DecodeResult r = dec.decode(apply_pauli(e, psi), rng);
      ASSERT_TRUE(transcript_matches(pred, r.transcript)) << to_string(e);
      ASSERT_EQ(r.identified_class, cl_s(dec.code(), e));
      ASSERT_NEAR(fidelity(r.corrected, psi), 1.0, 1e-9) << to_string(e);
      // Outcome sequences do not depend on the corrupted word.
      if (w == 0) first = outcomes(r.transcript.records);
      ASSERT_EQ(outcomes(r.transcript.records), first);
    }
  }
}

TEST(Properties, DegenerateErrorsShareTranscripts) {
  const Decoder& dec = decoder5();
  // X1 and Z2^4 Z5^4 have the same class.
  const PauliOp a = op5("X1"), b = op5("Z2^4 Z5^4");
  ASSERT_EQ(cl_s(dec.code(), a), cl_s(dec.code(), b));
  for (std::size_t w = 0; w < 5; ++w) {
    SeededRng r1(10), r2(10);
    const DecodeResult ra = dec.decode(corrupted(dec, a, w), r1);
    const DecodeResult rb = dec.decode(corrupted(dec, b, w), r2);
    EXPECT_EQ(outcomes(ra.transcript.records), outcomes(rb.transcript.records));
    EXPECT_EQ(ra.correction, rb.correction);
    EXPECT_EQ(ra.identified_class, rb.identified_class);
  }
}

TEST(Transcript, StructuredFields) {
  const Decoder& dec = decoder5();
  SeededRng rng(11);
  const PauliOp e = op5("Z3^2");
  const DecodeResult r = dec.decode(corrupted(dec, e, 0), rng);
  const auto j = nlohmann::json::parse(transcript_to_text(dec.code(), e, r.transcript, 1.0));
  EXPECT_EQ(j.at("code").at("d").get<int>(), 5);
  EXPECT_EQ(j.at("code").at("K").get<int>(), 5);
  EXPECT_EQ(j.at("injected_error").get<std::string>(), to_string(e));
  EXPECT_EQ(j.at("identified_class").get<std::vector<int>>(), (std::vector<int>{0, 0, 2, 0, 0}));
  EXPECT_EQ(j.at("located_group").get<int>(), 2);
  EXPECT_EQ(j.at("records").size(), r.transcript.records.size());
  EXPECT_EQ(j.at("records")[0].at("phase").get<std::string>(), "locate");
  EXPECT_EQ(j.at("counts").at("locate").get<int>(), 3);
  EXPECT_EQ(j.at("seed").get<int>(), 11);
  EXPECT_DOUBLE_EQ(j.at("fidelity_after_correction").get<double>(), 1.0);
}

TEST(InstanceChecks, UnionCodeChecksHoldAtD4) {
  CwsCode code = build_family_5_d_3(4);
  ErrorSetDecomposition d = decompose_weight1_errors(code);
  const Decoder dec(std::move(code), std::move(d));
  const InstanceCheckReport ortho = check_group_codes_orthonormal(dec);
  EXPECT_TRUE(ortho.ok());
  EXPECT_EQ(ortho.cases, 5u);
  const InstanceCheckReport comp =
      check_complement_detection(dec, enumerate_paulis(4, 5, 1, true), 60, 1);
  EXPECT_TRUE(comp.ok());
  EXPECT_EQ(comp.cases, 60u);
  const InstanceCheckReport slices = check_power_slice_detection(dec, 60, 1);
  EXPECT_TRUE(slices.ok());
  EXPECT_LT(slices.worst, 1e-9);
}

TEST(Sweep, SmallRunIsDeterministic) {
  CwsCode code = build_family_5_d_3(4);
  ErrorSetDecomposition d = decompose_weight1_errors(code);
  const Decoder dec(std::move(code), std::move(d));
  const std::vector<PauliOp> errors = {PauliOp::identity(4, 5), parse_pauli("X2^3 Z2", 4, 5),
                                       parse_pauli("Z5^2", 4, 5)};
  SweepOptions opt;
  opt.superpositions = 3;
  opt.workers = 2;
  const TrialReport a = run_exhaustive(dec, errors, opt);
  EXPECT_TRUE(a.ok());
  EXPECT_EQ(a.total_trials, 3u * 7u);
  EXPECT_EQ(a.oracle_mismatches, 0u);
  opt.workers = 1;
  EXPECT_EQ(report_to_structured(a), report_to_structured(run_exhaustive(dec, errors, opt)));
}

}  // namespace
}  // namespace cwsdec
