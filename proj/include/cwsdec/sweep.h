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

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "cwsdec/decoder.h"

namespace cwsdec {

/// Worker count from CWSDEC_WORKERS, else the hardware concurrency.
std::size_t default_worker_count();

/// Seed for one trial, a fixed mix of the run seed and the trial's
/// coordinates, so results do not depend on scheduling.
std::uint64_t trial_seed(std::uint64_t seed, std::size_t error_index, std::size_t trial_index);

/// Normalized sum_l c_l |b_l> with complex Gaussian c_l.
StateVector random_code_state(const SubspaceBasis& basis, SeededRng& rng);

struct SweepOptions {
  std::uint64_t seed = 1;
  std::size_t superpositions = 100;  // random states per error, on top of the K codewords
  std::size_t workers = 0;           // 0: default_worker_count()
  bool check_oracle = true;
};

struct ErrorTrialSummary {
  PauliOp error;
  std::size_t trials = 0;
  std::size_t successes = 0;
  double min_fidelity = 1.0;
  PhaseCounts max_counts;
  std::size_t oracle_mismatches = 0;
  double max_probability_deviation = 0.0;  // distance of any "in" probability from {0,1}
  std::string first_failure;
};

struct TrialReport {
  int d = 0;
  std::size_t n = 0;
  std::size_t K = 0;
  std::uint64_t seed = 0;
  std::size_t superpositions = 0;
  std::vector<ErrorTrialSummary> per_error;  // in error-list order

  // Folds over per_error.
  std::size_t total_trials = 0;
  std::size_t total_successes = 0;
  double min_fidelity = 1.0;
  PhaseCounts max_counts;
  std::size_t oracle_mismatches = 0;
  double max_probability_deviation = 0.0;

  PhaseCounts budget;
  double duration_seconds = 0.0;  // not part of the structured body

  double success_rate() const;
  bool within_budget() const;
  bool ok() const;
};

/// Decodes every error against every codeword and `superpositions` random
/// code states, comparing each transcript with the symbolic oracle.
TrialReport run_exhaustive(const Decoder& decoder, const std::vector<PauliOp>& errors,
                           const SweepOptions& options);

/// Recomputes the aggregate fields from per_error.
void fold_report(TrialReport& report);

std::string report_to_structured(const TrialReport& report);
std::string report_summary(const TrialReport& report);

struct AlgebraCheck {
  std::string name;
  bool passed = false;
  double value = 0.0;  // worst deviation observed
  double tolerance = 0.0;
  std::size_t cases = 0;
  std::string detail;
};

struct AlgebraReport {
  std::vector<AlgebraCheck> checks;
  bool ok() const;
};

/// Symbolic product, inverse and commutation phase against dense matrices
/// for `trials` random pairs on (d, n); requires d^n <= max_dim.
AlgebraCheck check_matrix_oracle(int d, std::size_t n, std::size_t trials, std::uint64_t seed,
                                 std::size_t max_dim);

/// (a b) c == a (b c) symbolically for `trials` random triples.
AlgebraCheck check_associativity(int d, std::size_t n, std::size_t trials, std::uint64_t seed);

/// P_wedge = P1 P2 and P_boxplus = P1 + P2 - 2 P1 P2 on eigenspaces of
/// random commuting Paulis.
AlgebraCheck check_wedge_boxplus(int d, std::size_t n, std::size_t trials, std::uint64_t seed,
                                 std::size_t max_dim);

/// M_boxplus = -M1 M2 for binary measurement operators M = 2P - I (d = 2).
AlgebraCheck check_boxplus_operator(std::size_t n, std::size_t trials, std::uint64_t seed,
                                    std::size_t max_dim);

/// Operator-algebra USt basis against translate_code on the d = 2 family
/// register: the code itself and the first group with a valid union code.
AlgebraCheck check_ust_span(std::size_t max_dim);

/// The checks applicable to (d, n): all four above at d = 2, the first
/// three otherwise.
AlgebraReport run_algebra_checks(int d, std::size_t n, std::size_t trials, std::uint64_t seed,
                                 std::size_t max_dim);

std::string algebra_report_to_structured(const AlgebraReport& report);

}  // namespace cwsdec
