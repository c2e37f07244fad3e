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

#include <stdexcept>
#include <string>

namespace cwsdec {

/// Operands disagree on modulus, register length or state dimension.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A value is outside the range an operation accepts (e.g. family d <= 3).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed text or file input.
class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The code data violates a CWS code invariant (duplicate words,
/// non-orthogonal codewords, non-commuting stabilizers, ...).
class InvalidCodeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The stabilizer set does not fix exactly one state.
class InvalidStabilizerError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A generator whose d-th power is not the identity with phase 0.
class UnsupportedGeneratorError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A union-code construction whose inputs break the orthogonality the
/// construction relies on.
class HypothesisViolationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input projectors do not commute, or a similar numerical precondition.
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A dense operation would exceed the configured dimension budget.
class SizeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The measurement sequence could not identify an error.
class DecodeFailureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An error-set decomposition does not cover the declared error set.
class CoverageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The corrected state does not lie in the code space.
class CorrectionMismatchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cwsdec
