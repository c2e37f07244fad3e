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

#pragma once

// Measurement decoder for CWS codes. The correctable error set is split
// into abelian groups D_0..D_{t-1}; a corrupted state is then measured
// against a sequence of union codes:
//
//   1. locate:     D_j(Q) for j = 0..t-2, stopping at the first "in"
//                  (all "out" means the error lies in D_{t-1});
//   2. generators: D_j^l(Q), the group with generator l removed; "in"
//                  means generator l does not appear in the error;
//   3. powers:     for each present generator s and r = 1..d-1, the
//                  slice code of elements whose exponent on s is r.
//
// Group and generator indices are 0-based throughout.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cwsdec/cws_code.h"
#include "cwsdec/dense_sim.h"
#include "cwsdec/union_codes.h"
#include "cwsdec/zd_pauli.h"

namespace cwsdec {

struct DecompositionGroup {
  ErrorGroup group;
  /// Physical error per generator with the same Cl_S class (X_i and Z_i
  /// for the weight-1 decomposition). The correction is built from these,
  /// so it also undoes the relative phases an X-type error puts on the
  /// codewords. Empty means "use the generators themselves".
  std::vector<PauliOp> recovery;
  std::string note;
};

struct ErrorSetDecomposition {
  std::vector<DecompositionGroup> groups;
};

/// One group per qudit, D_i = <Z^{Cl_S(X_i)}, Z^{Cl_S(Z_i)}>, with
/// recovery generators {X_i, Z_i}. Throws CoverageError when a weight-1
/// error's class is not in its qudit's group.
ErrorSetDecomposition decompose_weight1_errors(const CwsCode& code);

struct DecompositionReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

/// Checks every group for correctability (all pairwise E1^dagger E2 of
/// its elements), intra-group nondegeneracy, recovery alignment and a
/// successful union-code translation; then checks that every error in
/// error_set has its class in some group. Pass the codeword basis to
/// include the translation check.
DecompositionReport validate_decomposition(const CwsCode& code,
                                           const ErrorSetDecomposition& decomposition,
                                           const std::vector<PauliOp>& error_set,
                                           const SubspaceBasis* codeword_basis = nullptr);

enum class DecodePhase { kLocate, kGenerators, kPowers };

std::string to_string(DecodePhase phase);

struct MeasurementRecord {
  DecodePhase phase;
  std::string description;
  Outcome outcome;
  double probability;  // probability of "in"
};

struct PhaseCounts {
  std::size_t locate = 0;
  std::size_t generators = 0;
  std::size_t powers = 0;
  bool operator==(const PhaseCounts&) const = default;
};

PhaseCounts counts_of(const std::vector<MeasurementRecord>& records);

/// Worst-case measurement counts of the procedure for a decomposition:
/// t-1 locate, max generator count, and (d-1) per generator of the
/// largest group.
PhaseCounts measurement_budget(const ErrorSetDecomposition& decomposition);

struct DecodeTranscript {
  std::vector<MeasurementRecord> records;
  std::optional<std::size_t> located_group;
  std::vector<std::size_t> active_generators;
  std::vector<std::pair<std::size_t, int>> exponents;
  std::optional<ZdVec> identified_class;
  std::uint64_t seed = 0;
  std::uint64_t random_draws = 0;

  PhaseCounts counts() const { return counts_of(records); }
};

struct DecodeResult {
  ZdVec identified_class;
  StateVector corrected;
  DecodeTranscript transcript;
  PauliOp correction;         // operator whose inverse was applied
  double code_space_fidelity;  // ||P_Q corrected||
};

struct DecodeAttempt {
  std::optional<DecodeResult> result;
  DecodeTranscript transcript;  // partial when result is empty
  std::string error;
};

class Decoder {
 public:
  Decoder(CwsCode code, ErrorSetDecomposition decomposition);

  const CwsCode& code() const { return code_; }
  const ErrorSetDecomposition& decomposition() const { return decomposition_; }
  const SubspaceBasis& codeword_basis() const { return codeword_basis_; }

  struct LocateResult {
    std::size_t group;
    std::vector<MeasurementRecord> records;
    StateVector state;
  };
  LocateResult locate_group(const StateVector& psi, SeededRng& rng) const;

  struct GeneratorResult {
    std::vector<std::size_t> active;
    std::vector<MeasurementRecord> records;
    StateVector state;
  };
  GeneratorResult identify_generators(const StateVector& psi, std::size_t group,
                                      SeededRng& rng) const;

  struct PowerResult {
    std::vector<std::pair<std::size_t, int>> exponents;
    std::vector<MeasurementRecord> records;
    StateVector state;
  };
  /// Throws DecodeFailureError when no power of some active generator
  /// gives "in".
  PowerResult identify_powers(const StateVector& psi, std::size_t group,
                              const std::vector<std::size_t>& active, SeededRng& rng) const;

  /// Full procedure plus correction. Throws DecodeFailureError or
  /// CorrectionMismatchError.
  DecodeResult decode(const StateVector& psi, SeededRng& rng) const;

  /// decode() that reports failures with the transcript gathered so far.
  DecodeAttempt attempt_decode(const StateVector& psi, SeededRng& rng) const;

  /// Union code D_j(Q) (cached).
  std::shared_ptr<const SubspaceBasis> group_code(std::size_t group) const;

 private:
  std::shared_ptr<const SubspaceBasis> cached_union(
      const std::string& key, const std::function<TranslateSet()>& translates) const;
  void decode_into(const StateVector& psi, SeededRng& rng, DecodeTranscript& transcript,
                   std::optional<DecodeResult>& result) const;
  MeasurementRecord measure(DecodePhase phase, const std::string& description,
                            const SubspaceBasis& space, StateVector& state, SeededRng& rng) const;

  CwsCode code_;
  ErrorSetDecomposition decomposition_;
  SubspaceBasis codeword_basis_;
  mutable std::mutex cache_mutex_;
  mutable std::map<std::string, std::shared_ptr<const SubspaceBasis>> cache_;
};

// Record descriptions shared by the decoder and the symbolic oracle.
std::string describe_locate(const ErrorSetDecomposition& decomposition, std::size_t group);
std::string describe_removed(std::size_t group, std::size_t generator);
std::string describe_slice(std::size_t group, const std::vector<std::size_t>& active,
                           std::size_t s, int r);

struct PredictedRecord {
  DecodePhase phase;
  std::string description;
  Outcome outcome;
};

struct OraclePrediction {
  std::size_t located_group;
  std::vector<PredictedRecord> records;
  std::vector<std::size_t> active_generators;
  std::vector<std::pair<std::size_t, int>> exponents;
  ZdVec identified_class;
};

/// Predicts every measurement outcome from Cl_S arithmetic alone: the
/// class is "in" a union code exactly when it is one of the code's
/// translate classes. Throws CoverageError when no group holds the class.
OraclePrediction symbolic_oracle(const CwsCode& code, const ErrorSetDecomposition& decomposition,
                                 const PauliOp& error);

/// True when the outcomes and descriptions agree record for record.
bool transcript_matches(const OraclePrediction& prediction, const DecodeTranscript& transcript);

/// Structured transcript: code {d,n,K}, injected_error, records,
/// identified_class, fidelity_after_correction, counts, seed.
std::string transcript_to_text(const CwsCode& code, const std::optional<PauliOp>& injected_error,
                               const DecodeTranscript& transcript,
                               std::optional<double> fidelity_after_correction);

struct InstanceCheckReport {
  std::string name;
  std::size_t cases = 0;
  double worst = 0.0;  // largest Gram deviation or return probability
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

/// Every D_j(Q) has an orthonormal translated basis.
InstanceCheckReport check_group_codes_orthonormal(const Decoder& decoder);

/// Each E in the nondegenerate complement of D_j is detected by D_j(Q).
/// Checks at most max_cases (group, error) pairs; 0 checks all. Sampling
/// is seeded.
InstanceCheckReport check_complement_detection(const Decoder& decoder,
                                               const std::vector<PauliOp>& error_set,
                                               std::size_t max_cases, std::uint64_t seed);

/// Each slice code (exponent r on generator s) detects elements of the
/// same active set whose exponent on s is r' != r.
InstanceCheckReport check_power_slice_detection(const Decoder& decoder, std::size_t max_cases,
                                                std::uint64_t seed);

}  // namespace cwsdec
