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

#include "cwsdec/union_codes.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "cwsdec/errors.h"

namespace cwsdec {

namespace {

std::vector<std::vector<int>> exponent_tuples(int d, std::size_t t) {
  std::vector<std::vector<int>> out;
  std::vector<int> exps(t, 0);
  const std::size_t count = hilbert_dimension(d, t);
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    out.push_back(exps);
    for (std::size_t k = t; k-- > 0;) {
      if (++exps[k] < d) break;
      exps[k] = 0;
    }
  }
  return out;
}

PauliOp product_of_powers(const std::vector<PauliOp>& generators, const std::vector<int>& exps,
                          int d, std::size_t n) {
  PauliOp product = PauliOp::identity(d, n);
  for (std::size_t k = 0; k < generators.size(); ++k) {
    if (exps[k] != 0) product = mul(product, pow(generators[k], exps[k]));
  }
  return product.phase_free();
}

std::string exponent_text(const std::vector<int>& exps) {
  std::string s = "(";
  for (std::size_t k = 0; k < exps.size(); ++k) {
    if (k) s += ',';
    s += std::to_string(exps[k]);
  }
  return s + ")";
}

}  // namespace

ErrorGroup::ErrorGroup(int d, std::size_t n, std::vector<PauliOp> generators)
    : d_(d), n_(n), generators_(std::move(generators)) {
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    if (generators_[i].modulus() != d_ || generators_[i].num_qudits() != n_) {
      throw DimensionError("ErrorGroup: generator " + std::to_string(i) +
                           " acts on a different register");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (symplectic_phase(generators_[i], generators_[j]) != 0) {
        throw HypothesisViolationError("ErrorGroup: generators " + std::to_string(j) + " and " +
                                       std::to_string(i) + " do not commute");
      }
    }
  }
  // Independence: no generator lies in the group of the others.
  for (std::size_t l = 0; l < generators_.size(); ++l) {
    std::vector<PauliOp> others;
    for (std::size_t k = 0; k < generators_.size(); ++k) {
      if (k != l) others.push_back(generators_[k]);
    }
    for (const auto& exps : exponent_tuples(d_, others.size())) {
      if (product_of_powers(others, exps, d_, n_).equal_up_to_phase(generators_[l])) {
        throw HypothesisViolationError("ErrorGroup: generator " + std::to_string(l) + " (" +
                                       to_string(generators_[l]) +
                                       ") is a product of the other generators");
      }
    }
  }
  std::set<PauliOp> seen;
  for (auto& exps : exponent_tuples(d_, generators_.size())) {
    PauliOp op = product_of_powers(generators_, exps, d_, n_);
    if (!seen.insert(op).second) {
      throw HypothesisViolationError("ErrorGroup: element " + exponent_text(exps) +
                                     " repeats an earlier element; group order is below d^t");
    }
    elements_.push_back({std::move(exps), std::move(op)});
  }
}

std::optional<std::vector<int>> ErrorGroup::exponents_of(const PauliOp& op) const {
  for (const GroupElement& e : elements_) {
    if (e.op.equal_up_to_phase(op)) return e.exponents;
  }
  return std::nullopt;
}

PauliOp ErrorGroup::element(const std::vector<int>& exponents) const {
  if (exponents.size() != generators_.size()) {
    throw DimensionError("ErrorGroup::element: one exponent per generator");
  }
  return product_of_powers(generators_, exponents, d_, n_);
}

const std::vector<GroupElement>& group_elements(const ErrorGroup& group) {
  return group.elements();
}

ErrorGroup subgroup_without_generator(const ErrorGroup& group, std::size_t index) {
  if (index >= group.num_generators()) {
    throw DomainError("subgroup_without_generator: index " + std::to_string(index) +
                      " out of range for " + std::to_string(group.num_generators()) +
                      " generators");
  }
  std::vector<PauliOp> rest;
  for (std::size_t k = 0; k < group.num_generators(); ++k) {
    if (k != index) rest.push_back(group.generators()[k]);
  }
  return ErrorGroup(group.modulus(), group.num_qudits(), std::move(rest));
}

TranslateSet::TranslateSet(std::vector<PauliOp> elements) : elements_(std::move(elements)) {
  std::set<PauliOp> seen;
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    if (!seen.insert(elements_[i].phase_free()).second) {
      throw HypothesisViolationError("TranslateSet: element " + std::to_string(i) +
                                     " equals an earlier element up to phase");
    }
  }
}

TranslateSet TranslateSet::from_group(const ErrorGroup& group) {
  std::vector<PauliOp> ops;
  for (const GroupElement& e : group.elements()) ops.push_back(e.op);
  return TranslateSet(std::move(ops));
}

UnionCodeBasis translate_code(const TranslateSet& translates, const SubspaceBasis& code_basis) {
  const int d = code_basis.modulus();
  const std::size_t n = code_basis.num_qudits();
  const auto k = static_cast<Eigen::Index>(code_basis.rank());
  Eigen::MatrixXcd cols(static_cast<Eigen::Index>(code_basis.dimension()),
                        k * static_cast<Eigen::Index>(translates.size()));
  std::vector<std::string> labels;
  std::vector<TranslateProvenance> provenance;
  for (std::size_t t = 0; t < translates.size(); ++t) {
    const PauliOp& h = translates.elements()[t];
    cols.middleCols(static_cast<Eigen::Index>(t) * k, k) =
        apply_pauli_columns(h, d, n, code_basis.columns());
    for (std::size_t i = 0; i < code_basis.rank(); ++i) {
      labels.push_back("t" + std::to_string(t) + "." + code_basis.labels()[i]);
      provenance.push_back({h, i});
    }
  }
  try {
    return {SubspaceBasis(d, n, std::move(cols), std::move(labels)), std::move(provenance)};
  } catch (const PreconditionError& e) {
    throw HypothesisViolationError(
        std::string("translated code states are not orthonormal (the translate set is not a "
                    "detectable-difference set for this code): ") +
        e.what());
  }
}

TranslateSet power_slice_set(const ErrorGroup& group, const std::vector<std::size_t>& active,
                             std::size_t s, int r) {
  const int d = group.modulus();
  if (active.empty()) throw DomainError("power_slice_set: active set is empty");
  std::set<std::size_t> unique(active.begin(), active.end());
  if (unique.size() != active.size()) throw DomainError("power_slice_set: repeated index");
  if (*unique.rbegin() >= group.num_generators()) {
    throw DomainError("power_slice_set: generator index out of range");
  }
  if (!unique.contains(s)) throw DomainError("power_slice_set: s is not an active generator");
  if (r <= 0 || r >= d) throw DomainError("power_slice_set: exponent must satisfy 0 < r < d");

  std::vector<std::size_t> free;
  for (std::size_t a : active) {
    if (a != s) free.push_back(a);
  }
  std::vector<PauliOp> ops;
  std::vector<int> digits(free.size(), 1);
  while (true) {
    std::vector<int> exps(group.num_generators(), 0);
    exps[s] = r;
    for (std::size_t i = 0; i < free.size(); ++i) exps[free[i]] = digits[i];
    ops.push_back(group.element(exps));
    std::size_t i = free.size();
    while (i > 0) {
      if (++digits[i - 1] < d) break;
      digits[i - 1] = 1;
      --i;
    }
    if (i == 0) break;
  }
  return TranslateSet(std::move(ops));
}

std::vector<PauliOp> nondegenerate_complement(const std::vector<PauliOp>& errors,
                                              const ErrorGroup& group, const CwsCode& code) {
  std::vector<PauliOp> out;
  for (const PauliOp& e : errors) {
    const PauliOp e_dag = inverse(e);
    const bool nondegenerate = std::all_of(
        group.elements().begin(), group.elements().end(),
        [&](const GroupElement& f) { return !cl_s(code, mul(e_dag, f.op)).is_zero(); });
    if (nondegenerate) out.push_back(e);
  }
  return out;
}

SubspaceBasis stabilizer_averaging_projector(const PauliOp& g) {
  const int d = g.modulus();
  const std::size_t n = g.num_qudits();
  if (!pow(g, d).is_identity()) {
    throw UnsupportedGeneratorError("stabilizer_averaging_projector: " + to_string(g) +
                                    " does not have d-th power equal to the identity");
  }
  const std::size_t dim = hilbert_dimension(d, n);
  const std::vector<Complex> w = omega_powers(d);

  auto digits_of = [&](std::size_t index) {
    std::vector<int> digits(n);
    for (std::size_t k = n; k-- > 0;) {
      digits[k] = static_cast<int>(index % static_cast<std::size_t>(d));
      index /= static_cast<std::size_t>(d);
    }
    return digits;
  };

  // The averaged vector (1/d) sum_j g^j |i> lives on the orbit of i under
  // the X part of g; distinct orbits give orthogonal vectors.
  std::vector<bool> visited(dim, false);
  std::vector<Eigen::VectorXcd> columns;
  std::vector<std::string> labels;
  for (std::size_t start = 0; start < dim; ++start) {
    if (visited[start]) continue;
    std::map<std::size_t, Complex> support;
    std::size_t cur = start;
    long long phase = 0;
    for (int j = 0; j < d; ++j) {
      visited[cur] = true;
      support[cur] += w[static_cast<std::size_t>(mod_d(phase, d))];
      auto digits = digits_of(cur);
      std::size_t next = 0;
      phase += g.phase_exp();
      for (std::size_t k = 0; k < n; ++k) {
        digits[k] = (digits[k] + g.x_exp()[k]) % d;
        next = next * static_cast<std::size_t>(d) + static_cast<std::size_t>(digits[k]);
        phase += static_cast<long long>(g.z_exp()[k]) * digits[k];
      }
      cur = next;
    }
    double norm2 = 0.0;
    for (const auto& [idx, amp] : support) norm2 += std::norm(amp);
    if (norm2 < 1e-18) continue;
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim));
    const double inv = 1.0 / std::sqrt(norm2);
    for (const auto& [idx, amp] : support) v[static_cast<Eigen::Index>(idx)] = amp * inv;
    columns.push_back(std::move(v));
    labels.push_back("orbit" + std::to_string(start));
  }
  Eigen::MatrixXcd mat(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(columns.size()));
  for (std::size_t i = 0; i < columns.size(); ++i) mat.col(static_cast<Eigen::Index>(i)) = columns[i];
  return make_unchecked_basis(d, n, std::move(mat), std::move(labels));
}

namespace {

void require_same_register(const SubspaceBasis& a, const SubspaceBasis& b, const char* where) {
  if (a.modulus() != b.modulus() || a.num_qudits() != b.num_qudits()) {
    throw DimensionError(std::string(where) + ": bases act on different registers");
  }
}

struct CrossDecomposition {
  Eigen::MatrixXcd u;  // r_b x r_b, eigenvectors of M M^dagger, shared directions first
  Eigen::MatrixXcd v;  // r_a x r_a, eigenvectors of M^dagger M, shared directions first
  std::size_t shared;  // dim(A ∩ B)
};

// Orthonormal eigenvectors of a Hermitian 0/1 matrix, eigenvalue-1 block
// first, and the size of that block.
std::pair<Eigen::MatrixXcd, std::size_t> split_01(const Eigen::MatrixXcd& h) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(h);
  const Eigen::Index r = h.rows();
  Eigen::MatrixXcd out(r, r);
  std::size_t ones = 0;
  for (Eigen::Index i = 0; i < r; ++i) {
    if (eig.eigenvalues()[i] > 0.5) ++ones;
  }
  // Eigenvalues come in ascending order; reverse so the 1-block leads.
  for (Eigen::Index i = 0; i < r; ++i) out.col(i) = eig.eigenvectors().col(r - 1 - i);
  return {std::move(out), ones};
}

// With M = B^dagger A and commuting projectors, M^dagger M is the
// compression of P2 to A, whose eigenvalues are 0 or 1; its 1-eigenvectors
// span A ∩ B inside A. Same for M M^dagger inside B.
CrossDecomposition cross_decomposition(const SubspaceBasis& a, const SubspaceBasis& b,
                                       const char* where) {
  require_same_register(a, b, where);
  const double comm = projector_commutator_norm(a, b);
  if (comm > kOrthonormalityTol) {
    std::ostringstream msg;
    msg << where << ": projectors do not commute (||[P1,P2]||_F = " << comm << ")";
    throw PreconditionError(msg.str());
  }
  const auto ra = static_cast<Eigen::Index>(a.rank());
  const auto rb = static_cast<Eigen::Index>(b.rank());
  CrossDecomposition out{Eigen::MatrixXcd::Identity(rb, rb), Eigen::MatrixXcd::Identity(ra, ra), 0};
  if (ra == 0 || rb == 0) return out;
  const Eigen::MatrixXcd m = b.columns().adjoint() * a.columns();
  auto [v, shared_a] = split_01(m.adjoint() * m);
  auto [u, shared_b] = split_01(m * m.adjoint());
  if (shared_a != shared_b) {
    throw PreconditionError(std::string(where) + ": intersection dimension is ill-conditioned");
  }
  out.u = std::move(u);
  out.v = std::move(v);
  out.shared = shared_a;
  return out;
}

}  // namespace

double projector_commutator_norm(const SubspaceBasis& a, const SubspaceBasis& b) {
  require_same_register(a, b, "projector_commutator_norm");
  if (a.rank() == 0 || b.rank() == 0) return 0.0;
  // [P1,P2] = P1 P2 (I-P1) - (I-P1) P2 P1; the two blocks are Frobenius
  // orthogonal and equal in norm, and ||(I-P1) P2 P1||_F = ||W||_F with
  // W = B M - A M^dagger M, M = B^dagger A.
  const Eigen::MatrixXcd m = b.columns().adjoint() * a.columns();
  const Eigen::MatrixXcd w = b.columns() * m - a.columns() * (m.adjoint() * m);
  return std::sqrt(2.0) * w.norm();
}

SubspaceBasis wedge(const SubspaceBasis& a, const SubspaceBasis& b) {
  const CrossDecomposition x = cross_decomposition(a, b, "wedge");
  if (x.shared == 0) return SubspaceBasis::zero_space(a.modulus(), a.num_qudits());
  Eigen::MatrixXcd cols = a.columns() * x.v.leftCols(static_cast<Eigen::Index>(x.shared));
  return SubspaceBasis(a.modulus(), a.num_qudits(), std::move(cols), {});
}

SubspaceBasis boxplus(const SubspaceBasis& a, const SubspaceBasis& b) {
  const CrossDecomposition x = cross_decomposition(a, b, "boxplus");
  const auto shared = static_cast<Eigen::Index>(x.shared);
  const auto only_a = static_cast<Eigen::Index>(a.rank()) - shared;
  const auto only_b = static_cast<Eigen::Index>(b.rank()) - shared;
  Eigen::MatrixXcd cols(static_cast<Eigen::Index>(a.dimension()), only_a + only_b);
  if (only_a > 0) cols.leftCols(only_a) = a.columns() * x.v.rightCols(only_a);
  if (only_b > 0) cols.rightCols(only_b) = b.columns() * x.u.rightCols(only_b);
  return SubspaceBasis(a.modulus(), a.num_qudits(), std::move(cols), {});
}

SubspaceBasis ust_basis_via_operator_algebra(const TranslateSet& translates,
                                             const StabilizerSet& stabilizers) {
  const int d = stabilizers.modulus();
  const std::size_t n = stabilizers.num_qudits();
  if (hilbert_dimension(d, n) > kOperatorAlgebraMaxDim) {
    throw SizeError("operator-algebra USt construction limited to d^n <= " +
                    std::to_string(kOperatorAlgebraMaxDim));
  }
  SubspaceBasis total = SubspaceBasis::zero_space(d, n);
  for (const PauliOp& t : translates.elements()) {
    const PauliOp t_dag = inverse(t);
    std::optional<SubspaceBasis> fixed;
    for (const PauliOp& g : stabilizers.generators()) {
      SubspaceBasis eig = stabilizer_averaging_projector(mul(mul(t, g), t_dag));
      fixed = fixed ? wedge(*fixed, eig) : std::move(eig);
    }
    total = boxplus(total, *fixed);
  }
  return total;
}

double span_residual(const SubspaceBasis& a, const SubspaceBasis& b) {
  require_same_register(a, b, "span_residual");
  if (a.rank() != b.rank()) return std::numeric_limits<double>::infinity();
  if (a.rank() == 0) return 0.0;
  const Eigen::MatrixXcd ra = a.columns() - b.columns() * (b.columns().adjoint() * a.columns());
  const Eigen::MatrixXcd rb = b.columns() - a.columns() * (a.columns().adjoint() * b.columns());
  return std::max(ra.colwise().norm().maxCoeff(), rb.colwise().norm().maxCoeff());
}

double max_return_probability(const SubspaceBasis& space, const PauliOp& op) {
  if (space.rank() == 0) return 0.0;
  const Eigen::MatrixXcd moved =
      apply_pauli_columns(op, space.modulus(), space.num_qudits(), space.columns());
  const Eigen::MatrixXcd overlaps = space.columns().adjoint() * moved;
  return overlaps.colwise().squaredNorm().maxCoeff();
}

}  // namespace cwsdec
