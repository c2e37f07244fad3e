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

// Dense state-vector backend. Amplitude index convention: qudit 0 ("qudit 1"
// in the 1-based text shorthand) is the most significant base-d digit, so
// index = i_0 d^{n-1} + i_1 d^{n-2} + ... + i_{n-1}.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cwsdec/cws_code.h"
#include "cwsdec/zd_pauli.h"

namespace cwsdec {

using Complex = std::complex<double>;

inline constexpr double kOrthonormalityTol = 1e-8;
inline constexpr double kProbabilityTol = 1e-9;
inline constexpr double kAlgebraTol = 1e-12;

/// Single randomness source for measurement simulation. Counts draws so a
/// transcript can show whether any randomness was consumed.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t draws() const { return draws_; }

  /// Uniform double in [0, 1), identical on every platform.
  double uniform();
  std::uint64_t next_u64() {
    ++draws_;
    return engine_();
  }

 private:
  std::uint64_t seed_;
  std::uint64_t draws_ = 0;
  std::mt19937_64 engine_;
};

std::size_t hilbert_dimension(int d, std::size_t n);

/// w^0 .. w^{d-1}, exact on the real and imaginary axes.
std::vector<Complex> omega_powers(int d);

class StateVector {
 public:
  StateVector(int d, std::size_t n, Eigen::VectorXcd amplitudes);

  static StateVector basis_state(int d, std::size_t n, std::size_t index);

  int modulus() const { return d_; }
  std::size_t num_qudits() const { return n_; }
  std::size_t dimension() const { return static_cast<std::size_t>(amplitudes_.size()); }
  const Eigen::VectorXcd& amplitudes() const { return amplitudes_; }
  Complex operator[](std::size_t i) const { return amplitudes_[static_cast<Eigen::Index>(i)]; }

  double norm() const { return amplitudes_.norm(); }
  /// Throws DomainError for a (numerically) zero vector.
  StateVector normalized() const;
  StateVector scaled(Complex factor) const;

 private:
  int d_;
  std::size_t n_;
  Eigen::VectorXcd amplitudes_;
};

/// Orthonormal list of states stored as the columns of a dim x rank
/// matrix; represents the projector sum_b |b><b| without materializing it.
class SubspaceBasis {
 public:
  /// Validates orthonormality (Gram matrix within kOrthonormalityTol of I).
  SubspaceBasis(int d, std::size_t n, Eigen::MatrixXcd columns, std::vector<std::string> labels);
  static SubspaceBasis from_states(const std::vector<StateVector>& states,
                                   std::vector<std::string> labels);
  static SubspaceBasis zero_space(int d, std::size_t n);
  static SubspaceBasis full_space(int d, std::size_t n);

  int modulus() const { return d_; }
  std::size_t num_qudits() const { return n_; }
  std::size_t dimension() const { return static_cast<std::size_t>(columns_.rows()); }
  std::size_t rank() const { return static_cast<std::size_t>(columns_.cols()); }
  const Eigen::MatrixXcd& columns() const { return columns_; }
  const std::vector<std::string>& labels() const { return labels_; }
  StateVector state(std::size_t i) const;

  /// Dense projector; only for small dimensions.
  Eigen::MatrixXcd projector() const { return columns_ * columns_.adjoint(); }

 private:
  struct Unchecked {};
  SubspaceBasis(Unchecked, int d, std::size_t n, Eigen::MatrixXcd columns,
                std::vector<std::string> labels);
  friend SubspaceBasis make_unchecked_basis(int d, std::size_t n, Eigen::MatrixXcd columns,
                                            std::vector<std::string> labels);

  int d_;
  std::size_t n_;
  Eigen::MatrixXcd columns_;
  std::vector<std::string> labels_;
};

/// Builds a basis whose orthonormality the caller guarantees by
/// construction (orbit-disjoint supports, unitary rotations of a checked
/// basis). Skips the O(rank^2 dim) Gram check.
SubspaceBasis make_unchecked_basis(int d, std::size_t n, Eigen::MatrixXcd columns,
                                   std::vector<std::string> labels);

StateVector apply_pauli(const PauliOp& op, const StateVector& psi);

/// Applies op to every column of a basis matrix.
Eigen::MatrixXcd apply_pauli_columns(const PauliOp& op, int d, std::size_t n,
                                     const Eigen::MatrixXcd& columns);

/// Dense d^n x d^n matrix of op, assembled as a Kronecker product of the
/// single-qudit X and Z matrices. Independent of apply_pauli; used as the
/// oracle for the symbolic algebra.
Eigen::MatrixXcd dense_pauli_matrix(const PauliOp& op);

/// The unique state fixed by every generator, with its first nonzero
/// amplitude real and positive.
StateVector stabilized_state(const StabilizerSet& stabilizers);

/// Rank of the common +1 eigenspace, from the trace of the product of the
/// averaging projectors (exact integer arithmetic over the group sum).
std::size_t stabilized_space_rank(const StabilizerSet& stabilizers);

/// {w_l |S>}; throws InvalidCodeError when the states are not orthonormal.
SubspaceBasis codeword_basis(const CwsCode& code);

struct Projection {
  StateVector unnormalized;  // P psi, not normalized
  double probability;        // ||P psi||^2
};

Projection project(const SubspaceBasis& basis, const StateVector& psi);

enum class Outcome { kIn, kOut };

std::string to_string(Outcome outcome);

struct MeasurementResult {
  Outcome outcome;
  double probability_in;
  StateVector collapsed;
  bool consumed_randomness;
};

/// Binary in-space / out-of-space projective measurement. Outcomes whose
/// probability is within kProbabilityTol of 0 or 1 are settled without
/// drawing from rng.
MeasurementResult measure_subspace(const SubspaceBasis& basis, const StateVector& psi,
                                   SeededRng& rng);

/// |<psi|phi>|.
double fidelity(const StateVector& psi, const StateVector& phi);

Eigen::MatrixXcd gram_matrix(const std::vector<StateVector>& states);

/// Largest entry of |G - I|.
double gram_identity_deviation(const Eigen::MatrixXcd& gram);

// Snapshot file: {"d", "n", "amplitudes": [[re, im], ...]} in index order.
void save_state_snapshot(const StateVector& psi, const std::filesystem::path& path);
StateVector load_state_snapshot(const std::filesystem::path& path);

}  // namespace cwsdec
