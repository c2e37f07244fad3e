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

#include "cwsdec/cws_code.h"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "cwsdec/errors.h"
#include "json.hpp"

namespace cwsdec {

StabilizerSet::StabilizerSet(std::vector<PauliOp> generators)
    : d_(0), n_(0), generators_(std::move(generators)) {
  if (generators_.empty()) throw InvalidCodeError("stabilizer set has no generators");
  d_ = generators_.front().modulus();
  n_ = generators_.front().num_qudits();
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    const PauliOp& g = generators_[i];
    if (g.modulus() != d_ || g.num_qudits() != n_) {
      throw DimensionError("stabilizer generator " + std::to_string(i) +
                           " acts on a different register");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (symplectic_phase(generators_[j], g) != 0) {
        throw InvalidCodeError("stabilizer generators " + std::to_string(j) + " and " +
                               std::to_string(i) + " do not commute");
      }
    }
  }
  if (generators_.size() < n_) {
    throw InvalidCodeError("stabilizer set needs m >= n generators, got m=" +
                           std::to_string(generators_.size()) + " n=" + std::to_string(n_));
  }
}

WordOperatorSet::WordOperatorSet(std::vector<PauliOp> words) : words_(std::move(words)) {
  if (words_.empty()) throw InvalidCodeError("word operator set is empty");
  std::set<PauliOp> seen;
  for (std::size_t l = 0; l < words_.size(); ++l) {
    if (words_[l].modulus() != words_.front().modulus() ||
        words_[l].num_qudits() != words_.front().num_qudits()) {
      throw DimensionError("word operator " + std::to_string(l) + " acts on a different register");
    }
    if (!seen.insert(words_[l]).second) {
      throw InvalidCodeError("duplicate word operator " + std::to_string(l) + ": " +
                             to_string(words_[l]));
    }
  }
}

ClassicalCode::ClassicalCode(int d, std::size_t m, std::vector<ZdVec> codewords)
    : d_(d), m_(m), codewords_(std::move(codewords)) {
  std::set<ZdVec> seen;
  for (std::size_t l = 0; l < codewords_.size(); ++l) {
    if (codewords_[l].modulus() != d_ || codewords_[l].size() != m_) {
      throw DimensionError("classical codeword " + std::to_string(l) + " has wrong shape");
    }
    if (!seen.insert(codewords_[l]).second) {
      throw InvalidCodeError("classical codeword " + std::to_string(l) + " " +
                             codewords_[l].to_string() + " repeats an earlier codeword");
    }
  }
}

bool ClassicalCode::is_codeword_difference(const ZdVec& v) const {
  for (std::size_t i = 0; i < codewords_.size(); ++i) {
    for (std::size_t j = 0; j < codewords_.size(); ++j) {
      if (i != j && codewords_[i] - codewords_[j] == v) return true;
    }
  }
  return false;
}

ClassicalCode classical_word_vectors(const StabilizerSet& stabilizers,
                                     const WordOperatorSet& words) {
  std::vector<ZdVec> codewords;
  codewords.reserve(words.size());
  for (const PauliOp& w : words.words()) {
    if (w.modulus() != stabilizers.modulus() || w.num_qudits() != stabilizers.num_qudits()) {
      throw DimensionError("word operator acts on a different register than the stabilizers");
    }
    std::vector<int> entries(stabilizers.size());
    for (std::size_t k = 0; k < stabilizers.size(); ++k) {
      entries[k] = conjugation_phase(w, stabilizers[k]);
    }
    codewords.emplace_back(stabilizers.modulus(), std::move(entries));
  }
  return ClassicalCode(stabilizers.modulus(), stabilizers.size(), std::move(codewords));
}

CwsCode::CwsCode(StabilizerSet stabilizers, WordOperatorSet words,
                 std::optional<int> claimed_distance)
    : stabilizers_(std::move(stabilizers)),
      words_(std::move(words)),
      classical_(classical_word_vectors(stabilizers_, words_)),
      claimed_distance_(claimed_distance) {}

ZdVec cl_s(const StabilizerSet& stabilizers, const PauliOp& error) {
  if (error.modulus() != stabilizers.modulus() || error.num_qudits() != stabilizers.num_qudits()) {
    throw DimensionError("cl_s: error acts on a different register than the code");
  }
  std::vector<int> entries(stabilizers.size());
  for (std::size_t k = 0; k < stabilizers.size(); ++k) {
    entries[k] = mod_d(static_cast<long long>(error.z_exp().dot(stabilizers.r_row(k))) -
                           error.x_exp().dot(stabilizers.t_row(k)),
                       stabilizers.modulus());
  }
  return ZdVec(stabilizers.modulus(), std::move(entries));
}

std::string to_string(Detectability detectability) {
  switch (detectability) {
    case Detectability::kDetectable:
      return "detectable";
    case Detectability::kDegenerateDetectable:
      return "degenerate-detectable";
    case Detectability::kUndetectable:
      return "undetectable";
  }
  return "unknown";
}

Detectability is_detectable(const CwsCode& code, const PauliOp& error) {
  const ZdVec cls = cl_s(code, error);
  if (cls.is_zero()) {
    for (const PauliOp& w : code.words().words()) {
      if (symplectic_phase(w, error) != 0) return Detectability::kUndetectable;
    }
    return Detectability::kDegenerateDetectable;
  }
  if (code.classical().is_codeword_difference(cls)) return Detectability::kUndetectable;
  return Detectability::kDetectable;
}

CorrectabilityReport check_correctable_set(const CwsCode& code,
                                           const std::vector<PauliOp>& errors) {
  CorrectabilityReport report;
  std::vector<PauliOp> daggers;
  daggers.reserve(errors.size());
  for (const PauliOp& e : errors) daggers.push_back(inverse(e));
  for (std::size_t i = 0; i < errors.size(); ++i) {
    for (std::size_t j = 0; j < errors.size(); ++j) {
      ++report.pairs_checked;
      if (is_detectable(code, mul(daggers[i], errors[j])) == Detectability::kUndetectable) {
        report.violations.push_back({i, j});
      }
    }
  }
  return report;
}

bool degeneracy_class_equal(const CwsCode& code, const PauliOp& e1, const PauliOp& e2) {
  return cl_s(code, e1) == cl_s(code, e2);
}

bool verify_classical_weight1_condition(const ClassicalCode& classical,
                                        const std::vector<ZdVec>& patterns) {
  if (classical.size() < 2) return true;
  std::set<ZdVec> differences;
  for (std::size_t i = 0; i < classical.size(); ++i) {
    for (std::size_t j = 0; j < classical.size(); ++j) {
      if (i != j) differences.insert(classical[i] - classical[j]);
    }
  }
  for (const ZdVec& p : patterns) {
    for (const ZdVec& q : patterns) {
      if (differences.contains(p + q)) return false;
    }
  }
  return true;
}

DistanceReport verify_min_distance(const CwsCode& code, int delta) {
  DistanceReport report;
  report.delta = delta;
  if (delta <= 1) return report;
  const auto errors = enumerate_paulis(code.modulus(), code.num_qudits(),
                                       static_cast<std::size_t>(delta - 1), false);
  for (const PauliOp& e : errors) {
    ++report.errors_checked;
    if (is_detectable(code, e) == Detectability::kUndetectable) report.failures.push_back(e);
  }
  return report;
}

CwsCode build_family_5_d_3(int d, bool allow_small_d) {
  if (d < 2) throw DomainError("family ((5,d,3))_d needs d >= 2, got " + std::to_string(d));
  if (d <= 3 && !allow_small_d) {
    throw DomainError("family ((5,d,3))_d is defined for d > 3, got d=" + std::to_string(d));
  }
  constexpr std::size_t n = 5;
  // Ring graph 1-2-3-4-5-1: g_k = X_k Z_{k-1} Z_{k+1}.
  std::vector<PauliOp> generators;
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<int> t(n, 0);
    t[(k + n - 1) % n] = 1;
    t[(k + 1) % n] = 1;
    generators.push_back(PauliOp::x_then_z(ZdVec::unit(d, n, k), ZdVec(d, std::move(t))));
  }
  std::vector<PauliOp> words;
  for (int j = 0; j < d; ++j) {
    if (j == 2 || j == d - 1) continue;
    words.push_back(PauliOp::z_type(ZdVec(d, std::vector<int>(n, j))));
  }
  words.push_back(PauliOp::z_type(ZdVec(d, {2, -1, -1, 2, -1})));
  words.push_back(PauliOp::z_type(ZdVec(d, {-1, 2, 2, -1, 2})));
  return CwsCode(StabilizerSet(std::move(generators)), WordOperatorSet(std::move(words)), 3);
}

std::vector<ZdVec> weight1_class_patterns(const CwsCode& code) {
  std::set<ZdVec> image;
  for (const PauliOp& e : enumerate_paulis(code.modulus(), code.num_qudits(), 1, true)) {
    image.insert(cl_s(code, e));
  }
  return {image.begin(), image.end()};
}

namespace {

using nlohmann::json;

json op_to_json(const PauliOp& op) {
  const auto z = op.z_exp().entries();
  const auto x = op.x_exp().entries();
  return json{{"phase", op.phase_exp()},
              {"z", std::vector<int>(z.begin(), z.end())},
              {"x", std::vector<int>(x.begin(), x.end())}};
}

PauliOp op_from_json(const json& j, int d, std::size_t n, const std::string& where) {
  if (!j.is_object()) throw ParseError(where + ": expected an object");
  const auto z = j.at("z").get<std::vector<int>>();
  const auto x = j.at("x").get<std::vector<int>>();
  if (z.size() != n || x.size() != n) {
    throw ParseError(where + ": z and x must have n=" + std::to_string(n) + " entries");
  }
  return PauliOp(j.value("phase", 0), ZdVec(d, z), ZdVec(d, x));
}

}  // namespace

std::string code_to_spec_text(const CwsCode& code) {
  json j;
  j["d"] = code.modulus();
  j["n"] = code.num_qudits();
  j["stabilizers"] = json::array();
  for (const PauliOp& g : code.stabilizers().generators()) j["stabilizers"].push_back(op_to_json(g));
  j["words"] = json::array();
  for (const PauliOp& w : code.words().words()) j["words"].push_back(op_to_json(w));
  if (code.claimed_distance()) j["claimed_distance"] = *code.claimed_distance();
  return j.dump(2) + "\n";
}

CwsCode code_from_spec_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("code spec is not valid structured text: ") + e.what());
  }
  try {
    const int d = j.at("d").get<int>();
    const auto n = j.at("n").get<std::size_t>();
    if (d < 2) throw ParseError("code spec: d must be >= 2");
    std::vector<PauliOp> stabilizers;
    for (std::size_t i = 0; i < j.at("stabilizers").size(); ++i) {
      stabilizers.push_back(
          op_from_json(j["stabilizers"][i], d, n, "stabilizers[" + std::to_string(i) + "]"));
    }
    std::vector<PauliOp> words;
    for (std::size_t i = 0; i < j.at("words").size(); ++i) {
      words.push_back(op_from_json(j["words"][i], d, n, "words[" + std::to_string(i) + "]"));
    }
    std::optional<int> claimed;
    if (j.contains("claimed_distance") && !j["claimed_distance"].is_null()) {
      claimed = j["claimed_distance"].get<int>();
    }
    return CwsCode(StabilizerSet(std::move(stabilizers)), WordOperatorSet(std::move(words)),
                   claimed);
  } catch (const json::exception& e) {
    throw ParseError(std::string("code spec: ") + e.what());
  }
}

void save_code_spec(const CwsCode& code, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open " + path.string() + " for writing");
  out << code_to_spec_text(code);
}

CwsCode load_code_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open code spec " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return code_from_spec_text(buffer.str());
}

}  // namespace cwsdec
