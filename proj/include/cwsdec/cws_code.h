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
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cwsdec/zd_pauli.h"

namespace cwsdec {

/// Commuting generators g_k = X^{r_k} Z^{t_k} of the stabilizer group S.
class StabilizerSet {
 public:
  explicit StabilizerSet(std::vector<PauliOp> generators);

  int modulus() const { return d_; }
  std::size_t num_qudits() const { return n_; }
  std::size_t size() const { return generators_.size(); }
  const std::vector<PauliOp>& generators() const { return generators_; }
  const PauliOp& operator[](std::size_t k) const { return generators_[k]; }

  /// Row k of the [r|t] matrix: the X part r_k and the Z part t_k.
  const ZdVec& r_row(std::size_t k) const { return generators_[k].x_exp(); }
  const ZdVec& t_row(std::size_t k) const { return generators_[k].z_exp(); }

 private:
  int d_;
  std::size_t n_;
  std::vector<PauliOp> generators_;
};

/// The K word operators. No two share a canonical form.
class WordOperatorSet {
 public:
  explicit WordOperatorSet(std::vector<PauliOp> words);

  std::size_t size() const { return words_.size(); }
  const std::vector<PauliOp>& words() const { return words_; }
  const PauliOp& operator[](std::size_t l) const { return words_[l]; }

 private:
  std::vector<PauliOp> words_;
};

/// The classical code over Z_d^m induced by the word operators.
class ClassicalCode {
 public:
  ClassicalCode(int d, std::size_t m, std::vector<ZdVec> codewords);

  int modulus() const { return d_; }
  std::size_t length() const { return m_; }
  std::size_t size() const { return codewords_.size(); }
  const std::vector<ZdVec>& codewords() const { return codewords_; }
  const ZdVec& operator[](std::size_t l) const { return codewords_[l]; }

  /// True if c_i - c_j == v for some i != j.
  bool is_codeword_difference(const ZdVec& v) const;

 private:
  int d_;
  std::size_t m_;
  std::vector<ZdVec> codewords_;
};

/// ((n, K, delta))_d codeword-stabilized code.
class CwsCode {
 public:
  CwsCode(StabilizerSet stabilizers, WordOperatorSet words,
          std::optional<int> claimed_distance = std::nullopt);

  int modulus() const { return stabilizers_.modulus(); }
  std::size_t num_qudits() const { return stabilizers_.num_qudits(); }
  std::size_t dimension() const { return words_.size(); }
  const StabilizerSet& stabilizers() const { return stabilizers_; }
  const WordOperatorSet& words() const { return words_; }
  const ClassicalCode& classical() const { return classical_; }
  std::optional<int> claimed_distance() const { return claimed_distance_; }

 private:
  StabilizerSet stabilizers_;
  WordOperatorSet words_;
  ClassicalCode classical_;
  std::optional<int> claimed_distance_;
};

/// c_l with k-th entry conjugation_phase(w_l, g_k). Throws InvalidCodeError
/// when two words induce the same vector.
ClassicalCode classical_word_vectors(const StabilizerSet& stabilizers,
                                     const WordOperatorSet& words);
inline const ClassicalCode& classical_word_vectors(const CwsCode& code) {
  return code.classical();
}

/// Cl_S(E) = sum_l v_l r_l - u_l t_l, with r_l, t_l the columns of [r|t].
/// Entry k equals v.r_k - u.t_k. The phase of E is ignored.
ZdVec cl_s(const StabilizerSet& stabilizers, const PauliOp& error);
inline ZdVec cl_s(const CwsCode& code, const PauliOp& error) {
  return cl_s(code.stabilizers(), error);
}

enum class Detectability { kDetectable, kDegenerateDetectable, kUndetectable };

std::string to_string(Detectability detectability);

/// Degenerate-detectable: Cl_S(E) = 0 and E commutes with every word.
/// Detectable: Cl_S(E) != 0 and Cl_S(E) is no difference c_i - c_j, i != j.
/// Undetectable otherwise.
Detectability is_detectable(const CwsCode& code, const PauliOp& error);

struct CorrectabilityViolation {
  std::size_t first;   // index of E1 in the checked list
  std::size_t second;  // index of E2
};

struct CorrectabilityReport {
  std::size_t pairs_checked = 0;
  std::vector<CorrectabilityViolation> violations;
  bool ok() const { return violations.empty(); }
};

/// Classifies E1^dagger E2 for every ordered pair of the list.
CorrectabilityReport check_correctable_set(const CwsCode& code, const std::vector<PauliOp>& errors);

bool degeneracy_class_equal(const CwsCode& code, const PauliOp& e1, const PauliOp& e2);

/// True iff c_i - c_j != p + q for all i != j and all p, q in patterns.
bool verify_classical_weight1_condition(const ClassicalCode& classical,
                                        const std::vector<ZdVec>& patterns);

struct DistanceReport {
  int delta = 0;
  std::size_t errors_checked = 0;
  std::vector<PauliOp> failures;
  bool ok() const { return failures.empty(); }
};

/// Checks that every non-identity phase-0 error of weight <= delta-1 is
/// detectable (degenerate detection included).
DistanceReport verify_min_distance(const CwsCode& code, int delta);

/// The ((5,d,3))_d ring-graph family. d must exceed 3 unless
/// allow_small_d is set; small d exists for algebra testing only and may
/// still fail code validation (at d = 3 the words Z^a and Z^b coincide).
CwsCode build_family_5_d_3(int d, bool allow_small_d = false);

/// Cl_S images of all weight <= 1 errors, deduplicated, sorted.
std::vector<ZdVec> weight1_class_patterns(const CwsCode& code);

// Code-spec file: {"d", "n", "stabilizers": [{"phase","z","x"}...],
// "words": [...], "claimed_distance"?}.
std::string code_to_spec_text(const CwsCode& code);
CwsCode code_from_spec_text(const std::string& text);
void save_code_spec(const CwsCode& code, const std::filesystem::path& path);
CwsCode load_code_spec(const std::filesystem::path& path);

}  // namespace cwsdec
