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

#include "cwsdec/sweep.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <sstream>
#include <thread>

#include "cwsdec/errors.h"
#include "json.hpp"

namespace cwsdec {

namespace {

// splitmix64 finalizer.
std::uint64_t mix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

PhaseCounts max_of(const PhaseCounts& a, const PhaseCounts& b) {
  return {std::max(a.locate, b.locate), std::max(a.generators, b.generators),
          std::max(a.powers, b.powers)};
}

void run_error(const Decoder& decoder, std::size_t error_index, const SweepOptions& options,
               ErrorTrialSummary& out) {
  std::optional<OraclePrediction> prediction;
  if (options.check_oracle) {
    try {
      prediction = symbolic_oracle(decoder.code(), decoder.decomposition(), out.error);
    } catch (const CoverageError& e) {
      out.first_failure = e.what();
    }
  }
  const SubspaceBasis& basis = decoder.codeword_basis();
  const std::size_t K = basis.rank();
  for (std::size_t trial = 0; trial < K + options.superpositions; ++trial) {
    SeededRng rng(trial_seed(options.seed, error_index, trial));
    const StateVector original = trial < K ? basis.state(trial) : random_code_state(basis, rng);
    const StateVector corrupted = apply_pauli(out.error, original);
    const DecodeAttempt attempt = decoder.attempt_decode(corrupted, rng);
    ++out.trials;
    out.max_counts = max_of(out.max_counts, attempt.transcript.counts());
    for (const MeasurementRecord& r : attempt.transcript.records) {
      out.max_probability_deviation =
          std::max(out.max_probability_deviation, std::min(r.probability, 1.0 - r.probability));
    }
    std::string failure;
    if (!attempt.result) {
      failure = attempt.error;
      out.min_fidelity = 0.0;
    } else {
      const double f = fidelity(original, attempt.result->corrected);
      out.min_fidelity = std::min(out.min_fidelity, f);
      if (f < 1.0 - kProbabilityTol) failure = "fidelity " + std::to_string(f);
    }
    if (options.check_oracle &&
        (!prediction || !transcript_matches(*prediction, attempt.transcript))) {
      ++out.oracle_mismatches;
      if (failure.empty()) failure = "transcript differs from the symbolic oracle";
    }
    if (failure.empty()) {
      ++out.successes;
    } else if (out.first_failure.empty()) {
      out.first_failure = "trial " + std::to_string(trial) + ": " + failure;
    }
  }
}

nlohmann::json counts_json(const PhaseCounts& c) {
  return {{"locate", c.locate}, {"generators", c.generators}, {"powers", c.powers}};
}

PauliOp random_pauli(int d, std::size_t n, SeededRng& rng) {
  auto draw = [&] { return static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(d)); };
  std::vector<int> z(n), x(n);
  for (std::size_t i = 0; i < n; ++i) {
    z[i] = draw();
    x[i] = draw();
  }
  const int phase = draw();
  return PauliOp(phase, ZdVec(d, std::move(z)), ZdVec(d, std::move(x)));
}

// Random phase-0 Pauli of order d, other than the identity.
PauliOp random_order_d_pauli(int d, std::size_t n, SeededRng& rng) {
  while (true) {
    const PauliOp g = random_pauli(d, n, rng).phase_free();
    if (!g.is_pure_phase() && pow(g, d).is_identity()) return g;
  }
}

double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

void require_dim(int d, std::size_t n, std::size_t max_dim, const char* what) {
  if (hilbert_dimension(d, n) > max_dim) {
    throw SizeError(std::string(what) + ": d^n = " + std::to_string(hilbert_dimension(d, n)) +
                    " exceeds the dimension budget " + std::to_string(max_dim));
  }
}

AlgebraCheck finish(AlgebraCheck c) {
  c.passed = c.value <= c.tolerance;
  return c;
}

}  // namespace

std::size_t default_worker_count() {
  if (const char* env = std::getenv("CWSDEC_WORKERS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<std::size_t>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::uint64_t trial_seed(std::uint64_t seed, std::size_t error_index, std::size_t trial_index) {
  return mix(mix(mix(seed) ^ error_index) ^ trial_index);
}

StateVector random_code_state(const SubspaceBasis& basis, SeededRng& rng) {
  Eigen::VectorXcd c(static_cast<Eigen::Index>(basis.rank()));
  for (Eigen::Index i = 0; i < c.size(); ++i) {
    // Box-Muller; 1 - u keeps the logarithm finite.
    const double r = std::sqrt(-2.0 * std::log(1.0 - rng.uniform()));
    const double theta = 2.0 * std::numbers::pi * rng.uniform();
    c[i] = Complex(r * std::cos(theta), r * std::sin(theta));
  }
  return StateVector(basis.modulus(), basis.num_qudits(), basis.columns() * c).normalized();
}

double TrialReport::success_rate() const {
  return total_trials == 0 ? 1.0
                           : static_cast<double>(total_successes) / static_cast<double>(total_trials);
}

bool TrialReport::within_budget() const {
  return max_counts.locate <= budget.locate && max_counts.generators <= budget.generators &&
         max_counts.powers <= budget.powers;
}

bool TrialReport::ok() const {
  return total_successes == total_trials && oracle_mismatches == 0 && within_budget() &&
         max_probability_deviation <= kProbabilityTol;
}

void fold_report(TrialReport& report) {
  report.total_trials = 0;
  report.total_successes = 0;
  report.min_fidelity = 1.0;
  report.max_counts = {};
  report.oracle_mismatches = 0;
  report.max_probability_deviation = 0.0;
  for (const ErrorTrialSummary& e : report.per_error) {
    report.total_trials += e.trials;
    report.total_successes += e.successes;
    report.min_fidelity = std::min(report.min_fidelity, e.min_fidelity);
    report.max_counts = max_of(report.max_counts, e.max_counts);
    report.oracle_mismatches += e.oracle_mismatches;
    report.max_probability_deviation =
        std::max(report.max_probability_deviation, e.max_probability_deviation);
  }
}

TrialReport run_exhaustive(const Decoder& decoder, const std::vector<PauliOp>& errors,
                           const SweepOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  TrialReport report;
  report.d = decoder.code().modulus();
  report.n = decoder.code().num_qudits();
  report.K = decoder.code().dimension();
  report.seed = options.seed;
  report.superpositions = options.superpositions;
  report.budget = measurement_budget(decoder.decomposition());
  for (const PauliOp& e : errors) report.per_error.push_back(ErrorTrialSummary{e, 0, 0, 1.0, {}, 0, 0.0, {}});

  const std::size_t workers =
      std::min(options.workers == 0 ? default_worker_count() : options.workers,
               std::max<std::size_t>(errors.size(), 1));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < errors.size(); i = next++) {
      run_error(decoder, i, options, report.per_error[i]);
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  fold_report(report);
  report.duration_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::string report_to_structured(const TrialReport& report) {
  using nlohmann::json;
  json j;
  j["code"] = {{"d", report.d}, {"n", report.n}, {"K", report.K}};
  j["seed"] = report.seed;
  j["superpositions_per_error"] = report.superpositions;
  json errors = json::array();
  for (const ErrorTrialSummary& e : report.per_error) {
    errors.push_back({{"error", to_string(e.error)},
                      {"trials", e.trials},
                      {"successes", e.successes},
                      {"success", e.successes == e.trials},
                      {"min_fidelity", e.min_fidelity},
                      {"max_counts", counts_json(e.max_counts)},
                      {"oracle_mismatches", e.oracle_mismatches},
                      {"max_probability_deviation", e.max_probability_deviation},
                      {"failure", e.first_failure}});
  }
  j["per_error"] = std::move(errors);
  j["aggregate"] = {{"errors", report.per_error.size()},
                    {"trials", report.total_trials},
                    {"successes", report.total_successes},
                    {"success_rate", report.success_rate()},
                    {"min_fidelity", report.min_fidelity},
                    {"max_counts", counts_json(report.max_counts)},
                    {"budget", counts_json(report.budget)},
                    {"within_budget", report.within_budget()},
                    {"oracle_mismatches", report.oracle_mismatches},
                    {"max_probability_deviation", report.max_probability_deviation},
                    {"ok", report.ok()}};
  return j.dump(2);
}

std::string report_summary(const TrialReport& report) {
  std::ostringstream os;
  os << "code ((" << report.n << "," << report.K << "))_" << report.d << ": "
     << report.per_error.size() << " errors, " << report.total_trials << " trials, "
     << report.total_successes << " succeeded (rate " << report.success_rate() << ")\n";
  os << "worst counts (locate, generators, powers) = (" << report.max_counts.locate << ", "
     << report.max_counts.generators << ", " << report.max_counts.powers << "), budget ("
     << report.budget.locate << ", " << report.budget.generators << ", " << report.budget.powers
     << ")" << (report.within_budget() ? "" : " EXCEEDED") << "\n";
  os << "min fidelity " << report.min_fidelity << ", oracle mismatches "
     << report.oracle_mismatches << ", max probability deviation "
     << report.max_probability_deviation << "\n";
  for (const ErrorTrialSummary& e : report.per_error) {
    if (!e.first_failure.empty()) os << "FAILED " << to_string(e.error) << ": " << e.first_failure << "\n";
  }
  os << (report.ok() ? "result: PASS" : "result: FAIL") << "\n";
  return os.str();
}

bool AlgebraReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const AlgebraCheck& c) { return c.passed; });
}

AlgebraCheck check_matrix_oracle(int d, std::size_t n, std::size_t trials, std::uint64_t seed,
                                 std::size_t max_dim) {
  require_dim(d, n, max_dim, "check_matrix_oracle");
  AlgebraCheck c{"matrix oracle (product, inverse, commutation)", false, 0.0, kAlgebraTol, 0, ""};
  SeededRng rng(seed);
  const std::vector<Complex> w = omega_powers(d);
  const Eigen::Index dim = static_cast<Eigen::Index>(hilbert_dimension(d, n));
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(dim, dim);
  for (std::size_t i = 0; i < trials; ++i) {
    const PauliOp a = random_pauli(d, n, rng);
    const PauliOp b = random_pauli(d, n, rng);
    const Eigen::MatrixXcd ma = dense_pauli_matrix(a);
    const Eigen::MatrixXcd mb = dense_pauli_matrix(b);
    const double dev_mul = max_abs(dense_pauli_matrix(mul(a, b)) - ma * mb);
    const double dev_inv = max_abs(dense_pauli_matrix(inverse(a)) * ma - id);
    const double dev_comm =
        max_abs(ma * mb - w[static_cast<std::size_t>(symplectic_phase(a, b))] * (mb * ma));
    const double dev = std::max({dev_mul, dev_inv, dev_comm});
    ++c.cases;
    if (dev > c.value) {
      c.value = dev;
      c.detail = "worst pair " + to_string(a) + " , " + to_string(b);
    }
  }
  return finish(std::move(c));
}

AlgebraCheck check_associativity(int d, std::size_t n, std::size_t trials, std::uint64_t seed) {
  AlgebraCheck c{"associativity of symbolic product", false, 0.0, 0.0, 0, ""};
  SeededRng rng(seed);
  for (std::size_t i = 0; i < trials; ++i) {
    const PauliOp a = random_pauli(d, n, rng);
    const PauliOp b = random_pauli(d, n, rng);
    const PauliOp e = random_pauli(d, n, rng);
    ++c.cases;
    if (mul(mul(a, b), e) != mul(a, mul(b, e))) {
      c.value = 1.0;
      c.detail = "fails for " + to_string(a) + " , " + to_string(b) + " , " + to_string(e);
      break;
    }
  }
  return finish(std::move(c));
}

AlgebraCheck check_wedge_boxplus(int d, std::size_t n, std::size_t trials, std::uint64_t seed,
                                 std::size_t max_dim) {
  require_dim(d, n, max_dim, "check_wedge_boxplus");
  AlgebraCheck c{"wedge/boxplus projector identities", false, 0.0, kOrthonormalityTol, 0, ""};
  SeededRng rng(seed);
  for (std::size_t i = 0; i < trials; ++i) {
    const PauliOp g = random_order_d_pauli(d, n, rng);
    PauliOp h = random_order_d_pauli(d, n, rng);
    while (symplectic_phase(g, h) != 0) h = random_order_d_pauli(d, n, rng);
    const SubspaceBasis a = stabilizer_averaging_projector(g);
    const SubspaceBasis b = stabilizer_averaging_projector(h);
    const Eigen::MatrixXcd p1 = a.projector();
    const Eigen::MatrixXcd p2 = b.projector();
    const double dev_wedge = max_abs(wedge(a, b).projector() - p1 * p2);
    const double dev_box = max_abs(boxplus(a, b).projector() - (p1 + p2 - 2.0 * p1 * p2));
    const double dev = std::max(dev_wedge, dev_box);
    ++c.cases;
    if (dev > c.value) {
      c.value = dev;
      c.detail = "worst pair " + to_string(g) + " , " + to_string(h);
    }
  }
  return finish(std::move(c));
}

AlgebraCheck check_boxplus_operator(std::size_t n, std::size_t trials, std::uint64_t seed,
                                    std::size_t max_dim) {
  require_dim(2, n, max_dim, "check_boxplus_operator");
  AlgebraCheck c{"M1 boxplus M2 = -M1 M2 (d = 2)", false, 0.0, 1e-10, 0, ""};
  SeededRng rng(seed);
  const Eigen::Index dim = static_cast<Eigen::Index>(hilbert_dimension(2, n));
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(dim, dim);
  for (std::size_t i = 0; i < trials; ++i) {
    const PauliOp g = random_order_d_pauli(2, n, rng);
    PauliOp h = random_order_d_pauli(2, n, rng);
    while (symplectic_phase(g, h) != 0) h = random_order_d_pauli(2, n, rng);
    const SubspaceBasis a = stabilizer_averaging_projector(g);
    const SubspaceBasis b = stabilizer_averaging_projector(h);
    const Eigen::MatrixXcd m1 = 2.0 * a.projector() - id;
    const Eigen::MatrixXcd m2 = 2.0 * b.projector() - id;
    const Eigen::MatrixXcd mbox = 2.0 * boxplus(a, b).projector() - id;
    const double dev = max_abs(mbox + m1 * m2);
    ++c.cases;
    if (dev > c.value) {
      c.value = dev;
      c.detail = "worst pair " + to_string(g) + " , " + to_string(h);
    }
  }
  return finish(std::move(c));
}

AlgebraCheck check_ust_span(std::size_t max_dim) {
  require_dim(2, 5, max_dim, "check_ust_span");
  AlgebraCheck c{"operator-algebra USt basis spans the translated basis (d = 2)", false, 0.0, 1e-7,
                 0, ""};
  const CwsCode code = build_family_5_d_3(2, true);
  const SubspaceBasis words = codeword_basis(code);
  const StabilizerSet& stabs = code.stabilizers();

  auto compare = [&](const std::string& name, const std::vector<PauliOp>& group_ops) {
    std::vector<PauliOp> translates;
    for (const PauliOp& h : group_ops) {
      for (const PauliOp& w : code.words().words()) translates.push_back(mul(h, w));
    }
    const SubspaceBasis algebra = ust_basis_via_operator_algebra(TranslateSet(translates), stabs);
    const SubspaceBasis direct = translate_code(TranslateSet(group_ops), words).basis;
    const double r = span_residual(algebra, direct);
    ++c.cases;
    if (r > c.value) c.value = r;
    c.detail += (c.detail.empty() ? "" : "; ") + name + " residual " + std::to_string(r);
  };

  compare("code space", {PauliOp::identity(2, 5)});
  const ErrorSetDecomposition dec = decompose_weight1_errors(code);
  for (std::size_t j = 0; j < dec.groups.size(); ++j) {
    std::vector<PauliOp> ops;
    for (const GroupElement& e : dec.groups[j].group.elements()) ops.push_back(e.op);
    try {
      translate_code(TranslateSet(ops), words);
    } catch (const HypothesisViolationError&) {
      continue;
    }
    compare("D[" + std::to_string(j) + "](Q)", ops);
    break;
  }
  return finish(std::move(c));
}

AlgebraReport run_algebra_checks(int d, std::size_t n, std::size_t trials, std::uint64_t seed,
                                 std::size_t max_dim) {
  if (d < 2) throw DomainError("run_algebra_checks: d must be at least 2");
  if (n == 0) throw DomainError("run_algebra_checks: n must be positive");
  AlgebraReport report;
  report.checks.push_back(check_matrix_oracle(d, n, trials, seed, max_dim));
  report.checks.push_back(check_associativity(d, n, trials, seed + 1));
  report.checks.push_back(check_wedge_boxplus(d, n, std::min<std::size_t>(trials, 50), seed + 2,
                                              max_dim));
  if (d == 2) {
    report.checks.push_back(
        check_boxplus_operator(n, std::min<std::size_t>(trials, 50), seed + 3, max_dim));
    if (n == 5) report.checks.push_back(check_ust_span(max_dim));
  }
  return report;
}

std::string algebra_report_to_structured(const AlgebraReport& report) {
  using nlohmann::json;
  json checks = json::array();
  for (const AlgebraCheck& c : report.checks) {
    checks.push_back({{"name", c.name},
                      {"passed", c.passed},
                      {"worst_deviation", c.value},
                      {"tolerance", c.tolerance},
                      {"cases", c.cases},
                      {"detail", c.detail}});
  }
  return json{{"checks", checks}, {"ok", report.ok()}}.dump(2);
}

}  // namespace cwsdec
