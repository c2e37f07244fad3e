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

#include "cwsdec/commands.h"

#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "cwsdec/cws_code.h"
#include "cwsdec/decoder.h"
#include "cwsdec/dense_sim.h"
#include "cwsdec/errors.h"
#include "cwsdec/sweep.h"
#include "json.hpp"

namespace cwsdec {

namespace {

// Maps library exceptions onto the exit-code contract. A code that fails
// validation is a verification failure for `verify` and bad input elsewhere.
template <class F>
int guarded(std::ostream& err, int invalid_code_exit, F&& body) {
  try {
    return body();
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DimensionError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const SizeError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InvalidCodeError& e) {
    err << (invalid_code_exit == kExitFailure ? "verification failed: " : "error: ") << e.what()
        << "\n";
    return invalid_code_exit;
  } catch (const InvalidStabilizerError& e) {
    err << (invalid_code_exit == kExitFailure ? "verification failed: " : "error: ") << e.what()
        << "\n";
    return invalid_code_exit;
  } catch (const std::exception& e) {
    err << "failed: " << e.what() << "\n";
    return kExitFailure;
  }
}

CwsCode load_code(const CodeSource& source) {
  if (!source.spec_path.empty()) return load_code_spec(source.spec_path);
  if (source.d) return build_family_5_d_3(*source.d, source.allow_small_d);
  throw ParseError("a code is required: pass --spec <path> or --d <modulus>");
}

void require_budget(const CwsCode& code, std::size_t max_dim) {
  const std::size_t dim = hilbert_dimension(code.modulus(), code.num_qudits());
  if (dim > max_dim) {
    throw SizeError("d^n = " + std::to_string(dim) + " exceeds --max-dim " +
                    std::to_string(max_dim));
  }
}

void write_file(const std::string& path, const std::string& body) {
  std::ofstream f(path);
  if (!f) throw ParseError("cannot open " + path + " for writing");
  f << body << "\n";
}

void emit(const std::string& structured, const std::string& summary, ReportFormat format,
          const std::string& out_path, std::ostream& out) {
  if (!out_path.empty()) write_file(out_path, structured);
  out << (format == ReportFormat::kStructured ? structured + "\n" : summary);
}

PauliOp parse_trial_error(const std::string& text, const CwsCode& code, SeededRng& rng) {
  const int d = code.modulus();
  const std::size_t n = code.num_qudits();
  if (text == "random") {
    const std::vector<PauliOp> all = enumerate_paulis(d, n, 1, true);
    return all[rng.next_u64() % all.size()];
  }
  PauliOp e = parse_pauli(text, d, n);
  if (weight(e) > 1) {
    throw ParseError("error " + text + " has weight " + std::to_string(weight(e)) +
                     "; only weight <= 1 errors are supported");
  }
  return e;
}

std::string class_text(const std::optional<ZdVec>& c) { return c ? c->to_string() : "none"; }

}  // namespace

int cmd_build(const BuildArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, kExitUsage, [&] {
    const CwsCode code = build_family_5_d_3(args.d, args.allow_small_d);
    const std::string spec = code_to_spec_text(code);
    if (!args.out_path.empty()) save_code_spec(code, args.out_path);
    if (args.format == ReportFormat::kStructured) {
      out << spec << "\n";
    } else {
      out << "built ((5," << code.dimension() << ",3))_" << code.modulus()
          << ": K=" << code.dimension() << " m=" << code.stabilizers().size()
          << " n=" << code.num_qudits() << "\n";
      if (!args.out_path.empty()) out << "wrote " << args.out_path << "\n";
    }
    return kExitOk;
  });
}

int cmd_verify(const VerifyArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, kExitFailure, [&] {
    const std::string& level = args.level;
    const bool all = level == "all";
    if (!all && level != "classical" && level != "kl" && level != "distance" &&
        level != "theorems") {
      throw ParseError("unknown level '" + level + "' (classical, kl, distance, theorems, all)");
    }
    const CwsCode code = load_code(args.source);
    nlohmann::json j;
    j["code"] = {{"d", code.modulus()}, {"n", code.num_qudits()}, {"K", code.dimension()}};
    std::ostringstream summary;
    bool ok = true;

    if (all || level == "classical") {
      const std::vector<ZdVec> patterns = weight1_class_patterns(code);
      const bool pass = verify_classical_weight1_condition(code.classical(), patterns);
      ok = ok && pass;
      j["classical"] = {{"patterns", patterns.size()}, {"passed", pass}};
      summary << "classical: " << patterns.size() << " weight<=1 class patterns, "
              << (pass ? "PASS" : "FAIL") << "\n";
    }
    if (all || level == "kl") {
      const std::vector<PauliOp> errors =
          enumerate_paulis(code.modulus(), code.num_qudits(), 1, true);
      const CorrectabilityReport rep = check_correctable_set(code, errors);
      ok = ok && rep.ok();
      nlohmann::json violations = nlohmann::json::array();
      for (const CorrectabilityViolation& v : rep.violations) {
        violations.push_back({to_string(errors[v.first]), to_string(errors[v.second])});
      }
      j["kl"] = {{"pairs_checked", rep.pairs_checked}, {"passed", rep.ok()},
                 {"violations", violations}};
      summary << "kl: " << rep.pairs_checked << " pairs, " << rep.violations.size()
              << " violations, " << (rep.ok() ? "PASS" : "FAIL") << "\n";
      for (std::size_t i = 0; i < rep.violations.size() && i < 10; ++i) {
        summary << "  violation: " << violations[i][0].get<std::string>() << " vs "
                << violations[i][1].get<std::string>() << "\n";
      }
    }
    if (all || level == "distance") {
      const DistanceReport rep = verify_min_distance(code, args.delta);
      ok = ok && rep.ok();
      nlohmann::json failures = nlohmann::json::array();
      for (const PauliOp& e : rep.failures) failures.push_back(to_string(e));
      j["distance"] = {{"delta", rep.delta}, {"errors_checked", rep.errors_checked},
                       {"passed", rep.ok()}, {"undetectable", failures}};
      summary << "distance " << rep.delta << ": " << rep.errors_checked << " errors, "
              << rep.failures.size() << " undetectable, " << (rep.ok() ? "PASS" : "FAIL")
              << "\n";
      for (std::size_t i = 0; i < rep.failures.size() && i < 10; ++i) {
        summary << "  undetectable: " << to_string(rep.failures[i]) << "\n";
      }
    }
    if (all || level == "theorems") {
      require_budget(code, args.max_dim);
      const Decoder decoder(code, decompose_weight1_errors(code));
      const std::vector<PauliOp> errors =
          enumerate_paulis(code.modulus(), code.num_qudits(), 1, true);
      const InstanceCheckReport reports[] = {
          check_group_codes_orthonormal(decoder),
          check_complement_detection(decoder, errors, args.max_cases, args.seed),
          check_power_slice_detection(decoder, args.max_cases, args.seed + 1)};
      nlohmann::json th = nlohmann::json::array();
      for (const InstanceCheckReport& r : reports) {
        ok = ok && r.ok();
        th.push_back({{"name", r.name}, {"cases", r.cases}, {"worst", r.worst},
                      {"passed", r.ok()}, {"failures", r.failures}});
        summary << r.name << ": " << r.cases << " cases, worst " << r.worst << ", "
                << (r.ok() ? "PASS" : "FAIL") << "\n";
        for (std::size_t i = 0; i < r.failures.size() && i < 10; ++i) {
          summary << "  " << r.failures[i] << "\n";
        }
      }
      j["theorems"] = std::move(th);
    }
    j["passed"] = ok;
    summary << (ok ? "result: PASS" : "result: FAIL") << "\n";
    emit(j.dump(2), summary.str(), args.format, args.out_path, out);
    return ok ? kExitOk : kExitFailure;
  });
}

int cmd_decode_trial(const DecodeTrialArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, kExitUsage, [&] {
    const CwsCode code = load_code(args.source);
    require_budget(code, args.max_dim);
    SeededRng rng(args.seed);
    const PauliOp error = parse_trial_error(args.error, code, rng);
    const Decoder decoder(code, decompose_weight1_errors(code));
    const StateVector original = random_code_state(decoder.codeword_basis(), rng);
    const DecodeAttempt attempt = decoder.attempt_decode(apply_pauli(error, original), rng);

    std::optional<double> f;
    if (attempt.result) f = fidelity(original, attempt.result->corrected);
    const bool ok = f && *f >= 1.0 - kProbabilityTol;
    const std::string structured = transcript_to_text(code, error, attempt.transcript, f);

    std::ostringstream summary;
    summary << "injected " << to_string(error) << "\n";
    for (const MeasurementRecord& r : attempt.transcript.records) {
      summary << "  [" << to_string(r.phase) << "] " << r.description << " -> "
              << to_string(r.outcome) << " (p_in=" << r.probability << ")\n";
    }
    if (attempt.transcript.located_group) {
      summary << "located group " << *attempt.transcript.located_group << " ("
              << decoder.decomposition().groups[*attempt.transcript.located_group].note << ")\n";
    }
    summary << "identified class " << class_text(attempt.transcript.identified_class) << "\n";
    if (!attempt.error.empty()) summary << "decode failed: " << attempt.error << "\n";
    if (f) summary << "fidelity after correction " << *f << "\n";
    summary << (ok ? "result: PASS" : "result: FAIL") << "\n";
    emit(structured, summary.str(), args.format, args.out_path, out);
    return ok ? kExitOk : kExitFailure;
  });
}

int cmd_exhaustive(const ExhaustiveArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, kExitUsage, [&] {
    const CwsCode code = load_code(args.source);
    require_budget(code, args.max_dim);
    if (args.max_weight > 1) throw ParseError("--max-weight must be 0 or 1");
    const Decoder decoder(code, decompose_weight1_errors(code));
    const std::vector<PauliOp> errors =
        enumerate_paulis(code.modulus(), code.num_qudits(), args.max_weight, true);
    SweepOptions options;
    options.seed = args.seed;
    options.superpositions = args.superpositions;
    const TrialReport report = run_exhaustive(decoder, errors, options);
    emit(report_to_structured(report), report_summary(report), args.format, args.out_path, out);
    err << "sweep took " << report.duration_seconds << " s\n";
    return report.ok() ? kExitOk : kExitFailure;
  });
}

int cmd_algebra_check(const AlgebraArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, kExitUsage, [&] {
    const AlgebraReport report =
        run_algebra_checks(args.d, args.n, args.trials, args.seed, args.max_dim);
    std::ostringstream summary;
    for (const AlgebraCheck& c : report.checks) {
      summary << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.cases
              << " cases, worst deviation " << c.value << " (tolerance " << c.tolerance << ")";
      if (!c.passed && !c.detail.empty()) summary << "; " << c.detail;
      summary << "\n";
    }
    summary << (report.ok() ? "result: PASS" : "result: FAIL") << "\n";
    emit(algebra_report_to_structured(report), summary.str(), args.format, args.out_path, out);
    return report.ok() ? kExitOk : kExitFailure;
  });
}

int cmd_snapshot(const SnapshotArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, kExitUsage, [&] {
    if (args.out_path.empty()) throw ParseError("snapshot needs --out <path>");
    const CwsCode code = load_code(args.source);
    require_budget(code, args.max_dim);
    SeededRng rng(args.seed);
    StateVector psi = random_code_state(codeword_basis(code), rng);
    if (!args.error.empty()) psi = apply_pauli(parse_pauli(args.error, code.modulus(), code.num_qudits()), psi);
    save_state_snapshot(psi, args.out_path);
    out << "wrote " << psi.dimension() << " amplitudes to " << args.out_path << "\n";
    return kExitOk;
  });
}

int run_cli(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Measurement decoding of codeword-stabilized qudit codes", "cwsdec"};
  app.require_subcommand(1);

  std::string format_text = "text";
  auto format_of = [&] {
    return format_text == "structured" ? ReportFormat::kStructured : ReportFormat::kText;
  };
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", format_text, "text or structured")
        ->check(CLI::IsMember({"text", "structured"}));
  };
  int d_value = 0;
  auto add_source = [&](CLI::App* sub, CodeSource& src) {
    sub->add_option("--spec", src.spec_path, "code-spec file");
    sub->add_option("--d", d_value, "build the ((5,d,3))_d family instead of loading a spec");
    sub->add_flag("--allow-small-d", src.allow_small_d, "permit d <= 3");
  };
  auto finish_source = [&](CLI::App* sub, CodeSource& src) {
    if (sub->count("--d") > 0) src.d = d_value;
  };

  BuildArgs build;
  auto* build_cmd = app.add_subcommand("build", "write the ((5,d,3))_d code spec");
  build_cmd->add_option("--d", build.d, "qudit dimension")->required();
  build_cmd->add_option("--out", build.out_path, "output spec path");
  build_cmd->add_flag("--allow-small-d", build.allow_small_d, "permit d <= 3");
  add_format(build_cmd);

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "check code conditions");
  add_source(verify_cmd, verify.source);
  verify_cmd->add_option("--level", verify.level, "classical | kl | distance | theorems | all")
      ->required();
  verify_cmd->add_option("--delta", verify.delta, "distance to verify");
  verify_cmd->add_option("--max-cases", verify.max_cases, "theorem cases per suite (0 = all)");
  verify_cmd->add_option("--seed", verify.seed, "sampling seed");
  verify_cmd->add_option("--max-dim", verify.max_dim, "largest d^n to simulate");
  verify_cmd->add_option("--out", verify.out_path, "structured report path");
  add_format(verify_cmd);

  DecodeTrialArgs trial;
  auto* trial_cmd = app.add_subcommand("decode-trial", "decode one corrupted random code state");
  add_source(trial_cmd, trial.source);
  trial_cmd->add_option("--error", trial.error, "Pauli of weight <= 1, or 'random'");
  trial_cmd->add_option("--seed", trial.seed, "randomness seed");
  trial_cmd->add_option("--max-dim", trial.max_dim, "largest d^n to simulate");
  trial_cmd->add_option("--out", trial.out_path, "transcript path");
  add_format(trial_cmd);

  ExhaustiveArgs sweep;
  auto* sweep_cmd = app.add_subcommand("exhaustive", "decode every weight <= 1 error");
  add_source(sweep_cmd, sweep.source);
  sweep_cmd->add_option("--seed", sweep.seed, "randomness seed");
  sweep_cmd->add_option("--superpositions", sweep.superpositions,
                        "random code states per error besides the codewords");
  sweep_cmd->add_option("--max-weight", sweep.max_weight, "0 (identity only) or 1");
  sweep_cmd->add_option("--max-dim", sweep.max_dim, "largest d^n to simulate");
  sweep_cmd->add_option("--out", sweep.out_path, "structured report path");
  add_format(sweep_cmd);

  AlgebraArgs algebra;
  auto* algebra_cmd = app.add_subcommand("algebra-check", "Pauli and projector identities");
  algebra_cmd->add_option("--d", algebra.d, "qudit dimension");
  algebra_cmd->add_option("--n", algebra.n, "number of qudits");
  algebra_cmd->add_option("--trials", algebra.trials, "random cases");
  algebra_cmd->add_option("--seed", algebra.seed, "randomness seed");
  algebra_cmd->add_option("--max-dim", algebra.max_dim, "largest d^n for dense checks");
  algebra_cmd->add_option("--out", algebra.out_path, "structured report path");
  add_format(algebra_cmd);

  SnapshotArgs snap;
  auto* snap_cmd = app.add_subcommand("snapshot", "dump a (corrupted) random code state");
  add_source(snap_cmd, snap.source);
  snap_cmd->add_option("--error", snap.error, "Pauli to apply");
  snap_cmd->add_option("--seed", snap.seed, "randomness seed");
  snap_cmd->add_option("--max-dim", snap.max_dim, "largest d^n to simulate");
  snap_cmd->add_option("--out", snap.out_path, "snapshot path")->required();

  std::vector<std::string> args(argv.begin() + (argv.empty() ? 0 : 1), argv.end());
  std::reverse(args.begin(), args.end());  // CLI11 consumes a reversed vector
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << "run with --help for usage\n";
    return kExitUsage;
  }

  if (build_cmd->parsed()) {
    build.format = format_of();
    return cmd_build(build, out, err);
  }
  if (verify_cmd->parsed()) {
    finish_source(verify_cmd, verify.source);
    verify.format = format_of();
    return cmd_verify(verify, out, err);
  }
  if (trial_cmd->parsed()) {
    finish_source(trial_cmd, trial.source);
    trial.format = format_of();
    return cmd_decode_trial(trial, out, err);
  }
  if (sweep_cmd->parsed()) {
    finish_source(sweep_cmd, sweep.source);
    sweep.format = format_of();
    return cmd_exhaustive(sweep, out, err);
  }
  if (algebra_cmd->parsed()) {
    algebra.format = format_of();
    return cmd_algebra_check(algebra, out, err);
  }
  finish_source(snap_cmd, snap.source);
  return cmd_snapshot(snap, out, err);
}

}  // namespace cwsdec
