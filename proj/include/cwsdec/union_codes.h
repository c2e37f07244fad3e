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

// Union and union-stabilizer (USt) codes built by translating a code
// basis with explicit lists of Pauli operators, plus the wedge/boxplus
// measurement-operator calculus used to cross-check them at small size.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "cwsdec/cws_code.h"
#include "cwsdec/dense_sim.h"
#include "cwsdec/zd_pauli.h"

namespace cwsdec {

struct GroupElement {
  std::vector<int> exponents;  // one per generator
  PauliOp op;                  // phase stripped
};

/// Abelian group generated by t independent commuting Paulis of order d.
/// Holds all d^t elements; element ops carry phase 0 and all membership
/// tests are up to phase.
class ErrorGroup {
 public:
  ErrorGroup(int d, std::size_t n, std::vector<PauliOp> generators);

  int modulus() const { return d_; }
  std::size_t num_qudits() const { return n_; }
  std::size_t num_generators() const { return generators_.size(); }
  const std::vector<PauliOp>& generators() const { return generators_; }
  std::size_t order() const { return elements_.size(); }
  const std::vector<GroupElement>& elements() const { return elements_; }

  /// Exponent tuple of op (up to phase) or nullopt if op is not in the group.
  std::optional<std::vector<int>> exponents_of(const PauliOp& op) const;
  bool contains(const PauliOp& op) const { return exponents_of(op).has_value(); }

  /// Product of generator powers, phase stripped.
  PauliOp element(const std::vector<int>& exponents) const;

 private:
  int d_;
  std::size_t n_;
  std::vector<PauliOp> generators_;
  std::vector<GroupElement> elements_;
};

/// Elements indexed by exponent tuple, last generator varying fastest.
const std::vector<GroupElement>& group_elements(const ErrorGroup& group);

/// The group on the generators other than `index` (0-based).
ErrorGroup subgroup_without_generator(const ErrorGroup& group, std::size_t index);

/// Explicit translate list; no two elements equal up to phase.
class TranslateSet {
 public:
  explicit TranslateSet(std::vector<PauliOp> elements);
  static TranslateSet from_group(const ErrorGroup& group);

  std::size_t size() const { return elements_.size(); }
  const std::vector<PauliOp>& elements() const { return elements_; }

 private:
  std::vector<PauliOp> elements_;
};

struct TranslateProvenance {
  PauliOp translate;
  std::size_t source_index;  // index into the translated basis
};

struct UnionCodeBasis {
  SubspaceBasis basis;
  std::vector<TranslateProvenance> provenance;
};

/// Basis {h |b> : h in T, b in code_basis}. Throws HypothesisViolationError
/// when the translated states are not orthonormal.
UnionCodeBasis translate_code(const TranslateSet& translates, const SubspaceBasis& code_basis);

/// Products over `active` generators with the exponent of generator `s`
/// fixed at r and every other active exponent in 1..d-1; inactive
/// generators get exponent 0. Size (d-1)^{|active|-1}.
TranslateSet power_slice_set(const ErrorGroup& group, const std::vector<std::size_t>& active,
                             std::size_t s, int r);

/// Members E of `errors` with Cl_S(E^dagger F) != 0 for every F in the group.
std::vector<PauliOp> nondegenerate_complement(const std::vector<PauliOp>& errors,
                                              const ErrorGroup& group, const CwsCode& code);

/// Orthonormal basis of the +1 eigenspace of g. Requires g^d = I.
SubspaceBasis stabilizer_averaging_projector(const PauliOp& g);

/// Largest ||P1 P2 - P2 P1||_F over the two bases' projectors, computed
/// from cross-Gram products.
double projector_commutator_norm(const SubspaceBasis& a, const SubspaceBasis& b);

/// Basis of span(a) ∩ span(b). Throws PreconditionError unless the
/// projectors commute within kOrthonormalityTol.
SubspaceBasis wedge(const SubspaceBasis& a, const SubspaceBasis& b);

/// Basis of (A ∩ B^⊥) ⊕ (A^⊥ ∩ B); its projector is P1 + P2 - 2 P1 P2.
SubspaceBasis boxplus(const SubspaceBasis& a, const SubspaceBasis& b);

inline constexpr std::size_t kOperatorAlgebraMaxDim = 1024;

/// boxplus over t in T of the wedge over generators of the +1 eigenspaces
/// of t G_i t^dagger. Dense; limited to d^n <= kOperatorAlgebraMaxDim.
SubspaceBasis ust_basis_via_operator_algebra(const TranslateSet& translates,
                                             const StabilizerSet& stabilizers);

/// Largest ||b - P_B b|| over the columns of A and vice versa, or +inf when
/// the ranks differ. Zero iff the spans agree.
double span_residual(const SubspaceBasis& a, const SubspaceBasis& b);

/// Largest probability that op maps a basis state of `space` back into
/// `space`. Zero means op is detected by the code.
double max_return_probability(const SubspaceBasis& space, const PauliOp& op);

}  // namespace cwsdec
