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

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cwsdec {

/// Reduces `value` into [0, d).
constexpr int mod_d(long long value, int d) {
  long long r = value % d;
  return static_cast<int>(r < 0 ? r + d : r);
}

/// Fixed-length vector over Z_d. Entries are always reduced.
class ZdVec {
 public:
  ZdVec(int d, std::size_t n);
  ZdVec(int d, std::vector<int> entries);

  static ZdVec unit(int d, std::size_t n, std::size_t index, int value = 1);

  int modulus() const { return d_; }
  std::size_t size() const { return entries_.size(); }
  int operator[](std::size_t i) const { return entries_[i]; }
  std::span<const int> entries() const { return entries_; }

  bool is_zero() const;
  ZdVec with_entry(std::size_t i, int value) const;

  ZdVec operator+(const ZdVec& other) const;
  ZdVec operator-(const ZdVec& other) const;
  ZdVec operator-() const;
  ZdVec scaled(long long k) const;
  /// Dot product reduced mod d.
  int dot(const ZdVec& other) const;

  bool operator==(const ZdVec&) const = default;
  auto operator<=>(const ZdVec&) const = default;

  /// Renders as `[e1,...,en]`.
  std::string to_string() const;

 private:
  void require_compatible(const ZdVec& other, const char* op) const;

  int d_;
  std::vector<int> entries_;
};

/// Element w^p Z^v X^u of the generalized Pauli group on n qudits, where
/// X|i> = |i+1>, Z|i> = w^i |i> and w = exp(2 pi i / d). The Z-before-X
/// ordering is the canonical form everywhere in this library.
///
/// Qudit indices are 0-based in the API. The text shorthand accepted by
/// parse_pauli ("X1 Z3^2") is 1-based.
class PauliOp {
 public:
  PauliOp(int phase_exp, ZdVec z_exp, ZdVec x_exp);

  static PauliOp identity(int d, std::size_t n);
  static PauliOp x_on(int d, std::size_t n, std::size_t qudit, int power = 1);
  static PauliOp z_on(int d, std::size_t n, std::size_t qudit, int power = 1);
  static PauliOp z_type(const ZdVec& v);
  static PauliOp x_type(const ZdVec& u);
  /// X^r Z^t with the phase needed to bring it to canonical form.
  static PauliOp x_then_z(const ZdVec& r, const ZdVec& t);

  int modulus() const { return z_.modulus(); }
  std::size_t num_qudits() const { return z_.size(); }
  int phase_exp() const { return phase_; }
  const ZdVec& z_exp() const { return z_; }
  const ZdVec& x_exp() const { return x_; }

  bool is_identity() const { return phase_ == 0 && is_pure_phase(); }
  bool is_pure_phase() const { return z_.is_zero() && x_.is_zero(); }
  bool is_z_type() const { return x_.is_zero(); }

  PauliOp with_phase(int phase_exp) const;
  /// Same operator with the phase dropped; the key for "equal up to phase".
  PauliOp phase_free() const { return with_phase(0); }
  bool equal_up_to_phase(const PauliOp& other) const {
    return z_ == other.z_ && x_ == other.x_;
  }

  bool operator==(const PauliOp&) const = default;
  auto operator<=>(const PauliOp&) const = default;

 private:
  int phase_;
  ZdVec z_;
  ZdVec x_;
};

/// Operator product a*b in canonical form.
PauliOp mul(const PauliOp& a, const PauliOp& b);
inline PauliOp operator*(const PauliOp& a, const PauliOp& b) { return mul(a, b); }

PauliOp inverse(const PauliOp& a);
PauliOp pow(const PauliOp& a, long long k);

/// s with a*b = w^s b*a.
int symplectic_phase(const PauliOp& a, const PauliOp& b);

/// l with w g w^dagger = w^l g.
int conjugation_phase(const PauliOp& w, const PauliOp& g);

/// Number of qudits acted on non-trivially.
std::size_t weight(const PauliOp& a);

/// `w^p * Z^[v1,...,vn] * X^[u1,...,un]`.
std::string to_string(const PauliOp& a);

/// Parses the canonical rendering, or a product of factors such as
/// "X1 Z2", "Z3^2", "w^2 * X1^3 Z1", "I". Shorthand qudit indices are
/// 1-based. Factors multiply left to right.
PauliOp parse_pauli(std::string_view text, int d, std::size_t n);

/// All phase-0 Pauli operators of weight <= max_weight in a fixed order:
/// by weight, then by support (lexicographic), then by exponents. The
/// identity comes first when include_identity is set.
std::vector<PauliOp> enumerate_paulis(int d, std::size_t n, std::size_t max_weight,
                                      bool include_identity);

}  // namespace cwsdec
