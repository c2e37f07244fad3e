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

#include "cwsdec/decoder.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "cwsdec/errors.h"
#include "json.hpp"

namespace cwsdec {

namespace {

std::string index_list(const std::vector<std::size_t>& v) {
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(v[i]);
  }
  return s + "}";
}

// Class -> exponent tuple for every element of a group.
std::map<ZdVec, std::vector<int>> class_table(const CwsCode& code, const ErrorGroup& group) {
  std::map<ZdVec, std::vector<int>> table;
  for (const GroupElement& e : group.elements()) table.emplace(cl_s(code, e.op), e.exponents);
  return table;
}

std::vector<std::size_t> sample_indices(std::size_t total, std::size_t max_cases,
                                        std::uint64_t seed) {
  std::vector<std::size_t> idx(total);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  if (max_cases == 0 || max_cases >= total) return idx;
  std::mt19937_64 engine(seed);
  for (std::size_t i = 0; i < max_cases; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, total - 1);
    std::swap(idx[i], idx[pick(engine)]);
  }
  idx.resize(max_cases);
  std::sort(idx.begin(), idx.end());
  return idx;
}

}  // namespace

ErrorSetDecomposition decompose_weight1_errors(const CwsCode& code) {
  const int d = code.modulus();
  const std::size_t n = code.num_qudits();
  ErrorSetDecomposition out;
  for (std::size_t i = 0; i < n; ++i) {
    const PauliOp x = PauliOp::x_on(d, n, i);
    const PauliOp z = PauliOp::z_on(d, n, i);
    const PauliOp gx = PauliOp::z_type(cl_s(code, x));
    const PauliOp gz = PauliOp::z_type(cl_s(code, z));
    if (cl_s(code, gx) != cl_s(code, x) || cl_s(code, gz) != cl_s(code, z)) {
      throw CoverageError("decompose_weight1_errors: the Z-type representatives on qudit " +
                          std::to_string(i + 1) +
                          " do not reproduce their classes (stabilizers not in graph form)");
    }
    ErrorGroup group(d, n, {gx, gz});
    for (const PauliOp& e : enumerate_paulis(d, n, 1, false)) {
      if (e.x_exp()[i] == 0 && e.z_exp()[i] == 0) continue;
      if (!group.contains(PauliOp::z_type(cl_s(code, e)))) {
        throw CoverageError("decompose_weight1_errors: class of " + to_string(e) +
                            " is not in the group for qudit " + std::to_string(i + 1));
      }
    }
    out.groups.push_back({std::move(group), {x, z}, "qudit " + std::to_string(i + 1)});
  }
  return out;
}

DecompositionReport validate_decomposition(const CwsCode& code,
                                           const ErrorSetDecomposition& decomposition,
                                           const std::vector<PauliOp>& error_set,
                                           const SubspaceBasis* codeword_basis) {
  DecompositionReport report;
  std::vector<std::set<ZdVec>> classes(decomposition.groups.size());
  for (std::size_t j = 0; j < decomposition.groups.size(); ++j) {
    const DecompositionGroup& dg = decomposition.groups[j];
    const std::string tag = "D[" + std::to_string(j) + "]";
    std::vector<PauliOp> ops;
    for (const GroupElement& e : dg.group.elements()) {
      ops.push_back(e.op);
      if (!classes[j].insert(cl_s(code, e.op)).second) {
        report.violations.push_back(tag + ": element " + to_string(e.op) +
                                    " shares its class with another element (degenerate)");
      }
    }
    const CorrectabilityReport corr = check_correctable_set(code, ops);
    for (const CorrectabilityViolation& v : corr.violations) {
      if (v.first >= v.second) continue;  // report each unordered pair once
      report.violations.push_back(tag + ": correctability fails for " + to_string(ops[v.first]) +
                                  " and " + to_string(ops[v.second]));
    }
    if (!dg.recovery.empty()) {
      if (dg.recovery.size() != dg.group.num_generators()) {
        report.violations.push_back(tag + ": recovery list length differs from generator count");
      } else {
        for (std::size_t l = 0; l < dg.recovery.size(); ++l) {
          if (cl_s(code, dg.recovery[l]) != cl_s(code, dg.group.generators()[l])) {
            report.violations.push_back(tag + ": recovery " + std::to_string(l) +
                                        " has a different class from its generator");
          }
        }
      }
    }
    if (codeword_basis != nullptr) {
      try {
        translate_code(TranslateSet::from_group(dg.group), *codeword_basis);
      } catch (const std::exception& e) {
        report.violations.push_back(tag + ": union code is not orthonormal: " + e.what());
      }
    }
  }
  for (const PauliOp& e : error_set) {
    const ZdVec c = cl_s(code, e);
    const bool covered = std::any_of(classes.begin(), classes.end(),
                                     [&](const std::set<ZdVec>& s) { return s.contains(c); });
    if (!covered) report.violations.push_back("coverage: class of " + to_string(e) + " is in no group");
  }
  return report;
}

std::string to_string(DecodePhase phase) {
  switch (phase) {
    case DecodePhase::kLocate:
      return "locate";
    case DecodePhase::kGenerators:
      return "generators";
    case DecodePhase::kPowers:
      return "powers";
  }
  return "?";
}

PhaseCounts counts_of(const std::vector<MeasurementRecord>& records) {
  PhaseCounts c;
  for (const MeasurementRecord& r : records) {
    switch (r.phase) {
      case DecodePhase::kLocate:
        ++c.locate;
        break;
      case DecodePhase::kGenerators:
        ++c.generators;
        break;
      case DecodePhase::kPowers:
        ++c.powers;
        break;
    }
  }
  return c;
}

PhaseCounts measurement_budget(const ErrorSetDecomposition& decomposition) {
  PhaseCounts b;
  if (decomposition.groups.empty()) return b;
  b.locate = decomposition.groups.size() - 1;
  for (const DecompositionGroup& g : decomposition.groups) {
    const std::size_t t = g.group.num_generators();
    b.generators = std::max(b.generators, t);
    b.powers = std::max(b.powers, t * static_cast<std::size_t>(g.group.modulus() - 1));
  }
  return b;
}

std::string describe_locate(const ErrorSetDecomposition& decomposition, std::size_t group) {
  std::string s = "D[" + std::to_string(group) + "](Q)";
  const std::string& note = decomposition.groups.at(group).note;
  if (!note.empty()) s += " " + note;
  return s;
}

std::string describe_removed(std::size_t group, std::size_t generator) {
  return "D[" + std::to_string(group) + "] without generator " + std::to_string(generator);
}

std::string describe_slice(std::size_t group, const std::vector<std::size_t>& active,
                           std::size_t s, int r) {
  return "D[" + std::to_string(group) + "] slice active=" + index_list(active) +
         " s=" + std::to_string(s) + " r=" + std::to_string(r);
}

Decoder::Decoder(CwsCode code, ErrorSetDecomposition decomposition)
    : code_(std::move(code)),
      decomposition_(std::move(decomposition)),
      codeword_basis_(cwsdec::codeword_basis(code_)) {
  if (decomposition_.groups.empty()) throw DomainError("Decoder: decomposition has no groups");
  for (const DecompositionGroup& g : decomposition_.groups) {
    if (g.group.modulus() != code_.modulus() || g.group.num_qudits() != code_.num_qudits()) {
      throw DimensionError("Decoder: decomposition group acts on a different register");
    }
  }
}

std::shared_ptr<const SubspaceBasis> Decoder::cached_union(
    const std::string& key, const std::function<TranslateSet()>& translates) const {
  std::lock_guard<std::mutex> lock(cache_mutex_);
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  auto basis =
      std::make_shared<const SubspaceBasis>(translate_code(translates(), codeword_basis_).basis);
  cache_.emplace(key, basis);
  return basis;
}

std::shared_ptr<const SubspaceBasis> Decoder::group_code(std::size_t group) const {
  const ErrorGroup& g = decomposition_.groups.at(group).group;
  return cached_union(describe_locate(decomposition_, group),
                      [&] { return TranslateSet::from_group(g); });
}

MeasurementRecord Decoder::measure(DecodePhase phase, const std::string& description,
                                   const SubspaceBasis& space, StateVector& state,
                                   SeededRng& rng) const {
  MeasurementResult m = measure_subspace(space, state, rng);
  state = std::move(m.collapsed);
  return {phase, description, m.outcome, m.probability_in};
}

Decoder::LocateResult Decoder::locate_group(const StateVector& psi, SeededRng& rng) const {
  LocateResult out{decomposition_.groups.size() - 1, {}, psi};
  for (std::size_t j = 0; j + 1 < decomposition_.groups.size(); ++j) {
    const auto space = group_code(j);
    out.records.push_back(measure(DecodePhase::kLocate, describe_locate(decomposition_, j),
                                  *space, out.state, rng));
    if (out.records.back().outcome == Outcome::kIn) {
      out.group = j;
      break;
    }
  }
  return out;
}

Decoder::GeneratorResult Decoder::identify_generators(const StateVector& psi, std::size_t group,
                                                      SeededRng& rng) const {
  const ErrorGroup& g = decomposition_.groups.at(group).group;
  GeneratorResult out{{}, {}, psi};
  for (std::size_t l = 0; l < g.num_generators(); ++l) {
    const std::string key = describe_removed(group, l);
    const auto space = cached_union(
        key, [&] { return TranslateSet::from_group(subgroup_without_generator(g, l)); });
    out.records.push_back(measure(DecodePhase::kGenerators, key, *space, out.state, rng));
    if (out.records.back().outcome == Outcome::kOut) out.active.push_back(l);
  }
  return out;
}

Decoder::PowerResult Decoder::identify_powers(const StateVector& psi, std::size_t group,
                                              const std::vector<std::size_t>& active,
                                              SeededRng& rng) const {
  const ErrorGroup& g = decomposition_.groups.at(group).group;
  PowerResult out{{}, {}, psi};
  for (std::size_t s : active) {
    bool found = false;
    for (int r = 1; r < g.modulus() && !found; ++r) {
      const std::string key = describe_slice(group, active, s, r);
      const auto space = cached_union(key, [&] { return power_slice_set(g, active, s, r); });
      out.records.push_back(measure(DecodePhase::kPowers, key, *space, out.state, rng));
      if (out.records.back().outcome == Outcome::kIn) {
        out.exponents.emplace_back(s, r);
        found = true;
      }
    }
    if (!found) {
      throw DecodeFailureError("identify_powers: no exponent of generator " + std::to_string(s) +
                               " in group " + std::to_string(group) + " was accepted");
    }
  }
  return out;
}

void Decoder::decode_into(const StateVector& psi, SeededRng& rng, DecodeTranscript& transcript,
                          std::optional<DecodeResult>& result) const {
  transcript.seed = rng.seed();
  const std::uint64_t draws_before = rng.draws();
  auto sync_draws = [&] { transcript.random_draws = rng.draws() - draws_before; };
  auto append = [&](const std::vector<MeasurementRecord>& recs) {
    transcript.records.insert(transcript.records.end(), recs.begin(), recs.end());
    sync_draws();
  };

  LocateResult loc = locate_group(psi, rng);
  append(loc.records);
  transcript.located_group = loc.group;

  GeneratorResult gens = identify_generators(loc.state, loc.group, rng);
  append(gens.records);
  transcript.active_generators = gens.active;

  PowerResult pows = [&] {
    try {
      return identify_powers(gens.state, loc.group, gens.active, rng);
    } catch (...) {
      sync_draws();
      throw;
    }
  }();
  append(pows.records);
  transcript.exponents = pows.exponents;

  const DecompositionGroup& dg = decomposition_.groups[loc.group];
  std::vector<int> exps(dg.group.num_generators(), 0);
  for (const auto& [s, r] : pows.exponents) exps[s] = r;
  const PauliOp representative = dg.group.element(exps);
  ZdVec identified = cl_s(code_, representative);
  transcript.identified_class = identified;

  PauliOp correction = representative;
  if (!dg.recovery.empty()) {
    correction = PauliOp::identity(code_.modulus(), code_.num_qudits());
    for (std::size_t l = 0; l < exps.size(); ++l) {
      if (exps[l] != 0) correction = mul(correction, pow(dg.recovery[l], exps[l]));
    }
  }
  StateVector corrected = apply_pauli(inverse(correction), pows.state);
  const double in_code = std::sqrt(project(codeword_basis_, corrected).probability);
  if (in_code < 1.0 - kProbabilityTol) {
    throw CorrectionMismatchError("decode: corrected state has code-space fidelity " +
                                  std::to_string(in_code) + " (class " + identified.to_string() +
                                  ")");
  }
  result = DecodeResult{identified, std::move(corrected), transcript, correction, in_code};
}

DecodeResult Decoder::decode(const StateVector& psi, SeededRng& rng) const {
  DecodeTranscript transcript;
  std::optional<DecodeResult> result;
  decode_into(psi, rng, transcript, result);
  return std::move(*result);
}

DecodeAttempt Decoder::attempt_decode(const StateVector& psi, SeededRng& rng) const {
  DecodeAttempt attempt;
  try {
    decode_into(psi, rng, attempt.transcript, attempt.result);
  } catch (const DecodeFailureError& e) {
    attempt.error = e.what();
  } catch (const CorrectionMismatchError& e) {
    attempt.error = e.what();
  }
  return attempt;
}

OraclePrediction symbolic_oracle(const CwsCode& code, const ErrorSetDecomposition& decomposition,
                                 const PauliOp& error) {
  const ZdVec cls = cl_s(code, error);
  const std::size_t t = decomposition.groups.size();
  if (t == 0) throw DomainError("symbolic_oracle: decomposition has no groups");
  std::vector<std::map<ZdVec, std::vector<int>>> tables;
  for (const DecompositionGroup& g : decomposition.groups) tables.push_back(class_table(code, g.group));

  OraclePrediction p{t - 1, {}, {}, {}, cls};
  for (std::size_t j = 0; j + 1 < t; ++j) {
    const bool in = tables[j].contains(cls);
    p.records.push_back({DecodePhase::kLocate, describe_locate(decomposition, j),
                         in ? Outcome::kIn : Outcome::kOut});
    if (in) {
      p.located_group = j;
      break;
    }
  }
  const auto it = tables[p.located_group].find(cls);
  if (it == tables[p.located_group].end()) {
    throw CoverageError("symbolic_oracle: class " + cls.to_string() + " of " + to_string(error) +
                        " is in no decomposition group");
  }
  const std::vector<int>& exps = it->second;
  for (std::size_t l = 0; l < exps.size(); ++l) {
    p.records.push_back({DecodePhase::kGenerators, describe_removed(p.located_group, l),
                         exps[l] == 0 ? Outcome::kIn : Outcome::kOut});
    if (exps[l] != 0) p.active_generators.push_back(l);
  }
  for (std::size_t s : p.active_generators) {
    for (int r = 1; r <= exps[s]; ++r) {
      p.records.push_back({DecodePhase::kPowers,
                           describe_slice(p.located_group, p.active_generators, s, r),
                           r == exps[s] ? Outcome::kIn : Outcome::kOut});
    }
    p.exponents.emplace_back(s, exps[s]);
  }
  return p;
}

bool transcript_matches(const OraclePrediction& prediction, const DecodeTranscript& transcript) {
  if (prediction.records.size() != transcript.records.size()) return false;
  for (std::size_t i = 0; i < prediction.records.size(); ++i) {
    const PredictedRecord& a = prediction.records[i];
    const MeasurementRecord& b = transcript.records[i];
    if (a.phase != b.phase || a.description != b.description || a.outcome != b.outcome) {
      return false;
    }
  }
  return transcript.located_group == prediction.located_group &&
         transcript.active_generators == prediction.active_generators &&
         transcript.exponents == prediction.exponents &&
         transcript.identified_class == prediction.identified_class;
}

std::string transcript_to_text(const CwsCode& code, const std::optional<PauliOp>& injected_error,
                               const DecodeTranscript& transcript,
                               std::optional<double> fidelity_after_correction) {
  using nlohmann::json;
  json j;
  j["code"] = {{"d", code.modulus()}, {"n", code.num_qudits()}, {"K", code.dimension()}};
  j["injected_error"] = injected_error ? json(to_string(*injected_error)) : json(nullptr);
  json records = json::array();
  for (const MeasurementRecord& r : transcript.records) {
    records.push_back({{"phase", to_string(r.phase)},
                       {"description", r.description},
                       {"outcome", to_string(r.outcome)},
                       {"probability", r.probability}});
  }
  j["records"] = std::move(records);
  j["located_group"] =
      transcript.located_group ? json(*transcript.located_group) : json(nullptr);
  j["active_generators"] = transcript.active_generators;
  json exps = json::array();
  for (const auto& [s, r] : transcript.exponents) exps.push_back({{"generator", s}, {"power", r}});
  j["exponents"] = std::move(exps);
  if (transcript.identified_class) {
    const auto e = transcript.identified_class->entries();
    j["identified_class"] = std::vector<int>(e.begin(), e.end());
  } else {
    j["identified_class"] = nullptr;
  }
  j["fidelity_after_correction"] =
      fidelity_after_correction ? json(*fidelity_after_correction) : json(nullptr);
  const PhaseCounts c = transcript.counts();
  j["counts"] = {{"locate", c.locate}, {"generators", c.generators}, {"powers", c.powers}};
  j["seed"] = transcript.seed;
  j["random_draws"] = transcript.random_draws;
  return j.dump(2);
}

InstanceCheckReport check_group_codes_orthonormal(const Decoder& decoder) {
  InstanceCheckReport rep;
  rep.name = "union codes orthonormal";
  const auto& groups = decoder.decomposition().groups;
  for (std::size_t j = 0; j < groups.size(); ++j) {
    ++rep.cases;
    const TranslateSet translates = TranslateSet::from_group(groups[j].group);
    const Eigen::MatrixXcd& base = decoder.codeword_basis().columns();
    Eigen::MatrixXcd cols(base.rows(), base.cols() * static_cast<Eigen::Index>(translates.size()));
    for (std::size_t t = 0; t < translates.size(); ++t) {
      cols.middleCols(static_cast<Eigen::Index>(t) * base.cols(), base.cols()) =
          apply_pauli_columns(translates.elements()[t], decoder.code().modulus(),
                              decoder.code().num_qudits(), base);
    }
    const double dev = gram_identity_deviation(cols.adjoint() * cols);
    rep.worst = std::max(rep.worst, dev);
    if (dev > kOrthonormalityTol) {
      rep.failures.push_back("D[" + std::to_string(j) + "]: Gram deviation " + std::to_string(dev));
    }
  }
  return rep;
}

InstanceCheckReport check_complement_detection(const Decoder& decoder,
                                               const std::vector<PauliOp>& error_set,
                                               std::size_t max_cases, std::uint64_t seed) {
  InstanceCheckReport rep;
  rep.name = "complement detection";
  const auto& groups = decoder.decomposition().groups;
  std::vector<std::pair<std::size_t, PauliOp>> cases;
  for (std::size_t j = 0; j < groups.size(); ++j) {
    for (PauliOp& e : nondegenerate_complement(error_set, groups[j].group, decoder.code())) {
      cases.emplace_back(j, std::move(e));
    }
  }
  for (std::size_t i : sample_indices(cases.size(), max_cases, seed)) {
    const auto& [j, e] = cases[i];
    ++rep.cases;
    const double p = max_return_probability(*decoder.group_code(j), e);
    rep.worst = std::max(rep.worst, p);
    if (p > kProbabilityTol) {
      rep.failures.push_back("D[" + std::to_string(j) + "] fails to detect " + to_string(e) +
                             " (return probability " + std::to_string(p) + ")");
    }
  }
  return rep;
}

InstanceCheckReport check_power_slice_detection(const Decoder& decoder, std::size_t max_cases,
                                                std::uint64_t seed) {
  InstanceCheckReport rep;
  rep.name = "power slice detection";
  const auto& groups = decoder.decomposition().groups;
  struct Case {
    std::size_t group;
    std::vector<std::size_t> active;
    std::size_t s;
    int r;
    PauliOp element;
  };
  std::vector<Case> cases;
  for (std::size_t j = 0; j < groups.size(); ++j) {
    const ErrorGroup& g = groups[j].group;
    const std::size_t t = g.num_generators();
    for (std::size_t mask = 1; mask < (std::size_t{1} << t); ++mask) {
      std::vector<std::size_t> active;
      for (std::size_t l = 0; l < t; ++l) {
        if (mask & (std::size_t{1} << l)) active.push_back(l);
      }
      for (std::size_t s : active) {
        for (int r = 1; r < g.modulus(); ++r) {
          for (const GroupElement& e : g.elements()) {
            bool same_active = true;
            for (std::size_t l = 0; l < t; ++l) {
              const bool on = (mask & (std::size_t{1} << l)) != 0;
              if (on != (e.exponents[l] != 0)) same_active = false;
            }
            if (!same_active || e.exponents[s] == r) continue;
            cases.push_back({j, active, s, r, e.op});
          }
        }
      }
    }
  }
  std::map<std::string, SubspaceBasis> slices;
  for (std::size_t i : sample_indices(cases.size(), max_cases, seed)) {
    const Case& c = cases[i];
    ++rep.cases;
    const std::string key = describe_slice(c.group, c.active, c.s, c.r);
    auto it = slices.find(key);
    if (it == slices.end()) {
      it = slices
               .emplace(key, translate_code(power_slice_set(groups[c.group].group, c.active, c.s,
                                                            c.r),
                                            decoder.codeword_basis())
                                 .basis)
               .first;
    }
    const double p = max_return_probability(it->second, c.element);
    rep.worst = std::max(rep.worst, p);
    if (p > kProbabilityTol) {
      rep.failures.push_back(key + " fails to detect " +
                             to_string(c.element));
    }
  }
  return rep;
}

}  // namespace cwsdec
