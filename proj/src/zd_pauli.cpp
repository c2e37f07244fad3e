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

#include "cwsdec/zd_pauli.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>

#include "cwsdec/errors.h"

namespace cwsdec {

ZdVec::ZdVec(int d, std::size_t n) : d_(d), entries_(n, 0) {
  if (d < 2) throw DomainError("ZdVec: modulus must be >= 2, got " + std::to_string(d));
}

ZdVec::ZdVec(int d, std::vector<int> entries) : d_(d), entries_(std::move(entries)) {
  if (d < 2) throw DomainError("ZdVec: modulus must be >= 2, got " + std::to_string(d));
  for (int& e : entries_) e = mod_d(e, d_);
}

ZdVec ZdVec::unit(int d, std::size_t n, std::size_t index, int value) {
  if (index >= n) throw DimensionError("ZdVec::unit: index out of range");
  std::vector<int> e(n, 0);
  e[index] = value;
  return ZdVec(d, std::move(e));
}

bool ZdVec::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](int e) { return e == 0; });
}

ZdVec ZdVec::with_entry(std::size_t i, int value) const {
  if (i >= entries_.size()) throw DimensionError("ZdVec::with_entry: index out of range");
  std::vector<int> e = entries_;
  e[i] = value;
  return ZdVec(d_, std::move(e));
}

void ZdVec::require_compatible(const ZdVec& other, const char* op) const {
  if (d_ != other.d_ || entries_.size() != other.entries_.size()) {
    throw DimensionError(std::string("ZdVec::") + op + ": operands differ in modulus or length");
  }
}

ZdVec ZdVec::operator+(const ZdVec& other) const {
  require_compatible(other, "+");
  std::vector<int> e(entries_.size());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = entries_[i] + other.entries_[i];
  return ZdVec(d_, std::move(e));
}

ZdVec ZdVec::operator-(const ZdVec& other) const {
  require_compatible(other, "-");
  std::vector<int> e(entries_.size());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = entries_[i] - other.entries_[i];
  return ZdVec(d_, std::move(e));
}

ZdVec ZdVec::operator-() const { return scaled(-1); }

ZdVec ZdVec::scaled(long long k) const {
  std::vector<int> e(entries_.size());
  const int kk = mod_d(k, d_);
  for (std::size_t i = 0; i < e.size(); ++i) {
    e[i] = mod_d(static_cast<long long>(kk) * entries_[i], d_);
  }
  return ZdVec(d_, std::move(e));
}

int ZdVec::dot(const ZdVec& other) const {
  require_compatible(other, "dot");
  long long acc = 0;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    acc += static_cast<long long>(entries_[i]) * other.entries_[i];
  }
  return mod_d(acc, d_);
}

std::string ZdVec::to_string() const {
  std::string out = "[";
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(entries_[i]);
  }
  return out + "]";
}

PauliOp::PauliOp(int phase_exp, ZdVec z_exp, ZdVec x_exp)
    : phase_(0), z_(std::move(z_exp)), x_(std::move(x_exp)) {
  if (z_.modulus() != x_.modulus() || z_.size() != x_.size()) {
    throw DimensionError("PauliOp: Z and X exponent vectors differ in modulus or length");
  }
  phase_ = mod_d(phase_exp, z_.modulus());
}

PauliOp PauliOp::identity(int d, std::size_t n) { return PauliOp(0, ZdVec(d, n), ZdVec(d, n)); }

PauliOp PauliOp::x_on(int d, std::size_t n, std::size_t qudit, int power) {
  return PauliOp(0, ZdVec(d, n), ZdVec::unit(d, n, qudit, power));
}

PauliOp PauliOp::z_on(int d, std::size_t n, std::size_t qudit, int power) {
  return PauliOp(0, ZdVec::unit(d, n, qudit, power), ZdVec(d, n));
}

PauliOp PauliOp::z_type(const ZdVec& v) { return PauliOp(0, v, ZdVec(v.modulus(), v.size())); }

PauliOp PauliOp::x_type(const ZdVec& u) { return PauliOp(0, ZdVec(u.modulus(), u.size()), u); }

PauliOp PauliOp::x_then_z(const ZdVec& r, const ZdVec& t) {
  // X^r Z^t = w^{-r.t} Z^t X^r
  return mul(x_type(r), z_type(t));
}

PauliOp PauliOp::with_phase(int phase_exp) const { return PauliOp(phase_exp, z_, x_); }

namespace {

void require_same_space(const PauliOp& a, const PauliOp& b, const char* op) {
  if (a.modulus() != b.modulus() || a.num_qudits() != b.num_qudits()) {
    throw DimensionError(std::string(op) + ": operands act on different registers (d=" +
                         std::to_string(a.modulus()) + ",n=" + std::to_string(a.num_qudits()) +
                         " vs d=" + std::to_string(b.modulus()) +
                         ",n=" + std::to_string(b.num_qudits()) + ")");
  }
}

}  // namespace

PauliOp mul(const PauliOp& a, const PauliOp& b) {
  require_same_space(a, b, "mul");
  // Z^va X^ua Z^vb X^ub = w^{-ua.vb} Z^{va+vb} X^{ua+ub}
  const long long phase =
      static_cast<long long>(a.phase_exp()) + b.phase_exp() - a.x_exp().dot(b.z_exp());
  return PauliOp(mod_d(phase, a.modulus()), a.z_exp() + b.z_exp(), a.x_exp() + b.x_exp());
}

PauliOp inverse(const PauliOp& a) {
  const long long phase = -static_cast<long long>(a.phase_exp()) - a.x_exp().dot(a.z_exp());
  return PauliOp(mod_d(phase, a.modulus()), -a.z_exp(), -a.x_exp());
}

PauliOp pow(const PauliOp& a, long long k) {
  if (k < 0) throw DomainError("pow: negative exponent");
  PauliOp result = PauliOp::identity(a.modulus(), a.num_qudits());
  PauliOp base = a;
  while (k > 0) {
    if (k & 1) result = mul(result, base);
    base = mul(base, base);
    k >>= 1;
  }
  return result;
}

int symplectic_phase(const PauliOp& a, const PauliOp& b) {
  require_same_space(a, b, "symplectic_phase");
  return mod_d(static_cast<long long>(b.x_exp().dot(a.z_exp())) - a.x_exp().dot(b.z_exp()),
               a.modulus());
}

int conjugation_phase(const PauliOp& w, const PauliOp& g) { return symplectic_phase(w, g); }

std::size_t weight(const PauliOp& a) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < a.num_qudits(); ++i) {
    if (a.z_exp()[i] != 0 || a.x_exp()[i] != 0) ++count;
  }
  return count;
}

std::string to_string(const PauliOp& a) {
  std::ostringstream out;
  out << "w^" << a.phase_exp() << " * Z^" << a.z_exp().to_string() << " * X^"
      << a.x_exp().to_string();
  return out.str();
}

namespace {

class PauliParser {
 public:
  PauliParser(std::string_view text, int d, std::size_t n) : text_(text), d_(d), n_(n) {}

  PauliOp parse() {
    PauliOp result = PauliOp::identity(d_, n_);
    bool any = false;
    skip_separators();
    while (pos_ < text_.size()) {
      result = mul(result, factor());
      any = true;
      skip_separators();
    }
    if (!any) fail("empty operator");
    return result;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw ParseError("cannot parse Pauli operator '" + std::string(text_) + "' at offset " +
                     std::to_string(pos_) + ": " + why);
  }

  void skip_separators() {
    while (pos_ < text_.size() &&
           (std::isspace(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '*')) {
      ++pos_;
    }
  }

  void skip_spaces() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek(char c) const { return pos_ < text_.size() && text_[pos_] == c; }

  long long integer() {
    skip_spaces();
    const char* begin = text_.data() + pos_;
    const char* end = text_.data() + text_.size();
    long long value = 0;
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr == begin) fail("expected an integer");
    pos_ += static_cast<std::size_t>(ptr - begin);
    return value;
  }

  ZdVec vector_literal() {
    if (!peek('[')) fail("expected '['");
    ++pos_;
    std::vector<int> entries;
    skip_spaces();
    if (!peek(']')) {
      while (true) {
        entries.push_back(mod_d(integer(), d_));
        skip_spaces();
        if (peek(',')) {
          ++pos_;
          continue;
        }
        break;
      }
    }
    skip_spaces();
    if (!peek(']')) fail("expected ']'");
    ++pos_;
    if (entries.size() != n_) {
      fail("vector has " + std::to_string(entries.size()) + " entries, expected " +
           std::to_string(n_));
    }
    return ZdVec(d_, std::move(entries));
  }

  long long optional_power() {
    if (!peek('^')) return 1;
    ++pos_;
    return integer();
  }

  PauliOp factor() {
    const char c = text_[pos_];
    if (c == 'I') {
      ++pos_;
      return PauliOp::identity(d_, n_);
    }
    if (c == 'w') {
      ++pos_;
      return PauliOp::identity(d_, n_).with_phase(mod_d(optional_power(), d_));
    }
    if (c != 'X' && c != 'Z') fail(std::string("unexpected character '") + c + "'");
    ++pos_;
    if (peek('^')) {
      ++pos_;
      skip_spaces();
      ZdVec v = vector_literal();
      return c == 'X' ? PauliOp::x_type(v) : PauliOp::z_type(v);
    }
    const long long qudit = integer();
    if (qudit < 1 || static_cast<std::size_t>(qudit) > n_) {
      fail("qudit index " + std::to_string(qudit) + " outside 1.." + std::to_string(n_));
    }
    const int power = mod_d(optional_power(), d_);
    const auto index = static_cast<std::size_t>(qudit - 1);
    return c == 'X' ? PauliOp::x_on(d_, n_, index, power) : PauliOp::z_on(d_, n_, index, power);
  }

  std::string_view text_;
  int d_;
  std::size_t n_;
  std::size_t pos_ = 0;
};

}  // namespace

PauliOp parse_pauli(std::string_view text, int d, std::size_t n) {
  return PauliParser(text, d, n).parse();
}

std::vector<PauliOp> enumerate_paulis(int d, std::size_t n, std::size_t max_weight,
                                      bool include_identity) {
  std::vector<PauliOp> out;
  if (include_identity) out.push_back(PauliOp::identity(d, n));
  const int local = d * d - 1;  // non-identity single-qudit (z, x) pairs
  for (std::size_t w = 1; w <= std::min(max_weight, n); ++w) {
    // Supports in lexicographic order via a selection mask.
    std::vector<bool> mask(n, false);
    std::fill(mask.begin(), mask.begin() + static_cast<std::ptrdiff_t>(w), true);
    do {
      std::vector<std::size_t> support;
      for (std::size_t i = 0; i < n; ++i) {
        if (mask[i]) support.push_back(i);
      }
      std::vector<int> choice(w, 0);
      while (true) {
        std::vector<int> z(n, 0), x(n, 0);
        for (std::size_t k = 0; k < w; ++k) {
          const int pair = choice[k] + 1;  // 1..d^2-1
          x[support[k]] = pair / d;
          z[support[k]] = pair % d;
        }
        out.emplace_back(0, ZdVec(d, std::move(z)), ZdVec(d, std::move(x)));
        std::size_t k = w;
        while (k > 0 && ++choice[k - 1] == local) choice[--k] = 0;
        if (k == 0) break;
      }
    } while (std::prev_permutation(mask.begin(), mask.end()));
  }
  return out;
}

}  // namespace cwsdec
